/**
 * Force the window scroll position to the top left corner, instantly.
 *
 * Pages can opt into smooth scrolling, which would leave the viewport
 * mid-animation when the screenshot fires, so the scroll is requested
 * with instant behavior first and then pinned by writing the scrollTop
 * properties directly. Returns the resulting vertical offset.
 */
export function run(): number {
  try {
    window.scrollTo({ top: 0, left: 0, behavior: "instant" as ScrollBehavior });
  } catch {
    // Older engines reject the options object form.
  }
  try {
    window.scrollTo(0, 0);
  } catch {
    // A page can replace scrollTo with something that throws.
  }
  if (document.documentElement) {
    document.documentElement.scrollTop = 0;
  }
  if (document.body) {
    document.body.scrollTop = 0;
  }
  return window.pageYOffset || 0;
}
