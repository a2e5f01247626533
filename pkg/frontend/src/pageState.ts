export interface PageState {
  url: string;
  readyState: string;
  title: string;
  innerWidth: number;
  innerHeight: number;
  devicePixelRatio: number;
  scrollY: number;
}

/** Snapshot the page identity and viewport numbers in one round trip. */
export function run(): PageState {
  return {
    url: String(window.location.href),
    readyState: String(document.readyState),
    title: document.title ? String(document.title) : "",
    innerWidth: window.innerWidth,
    innerHeight: window.innerHeight,
    devicePixelRatio: window.devicePixelRatio || 1,
    scrollY: window.pageYOffset || 0,
  };
}
