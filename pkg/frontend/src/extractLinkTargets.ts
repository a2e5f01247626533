/**
 * Collect the href attribute of every anchor, duplicates preserved.
 * Anchors without an href contribute nothing, mirroring the img rule.
 */
export function run(): string[] {
  const out: string[] = [];
  const anchors = document.getElementsByTagName("a");
  for (let i = 0; i < anchors.length; i++) {
    if (anchors[i].hasAttribute("href")) {
      out.push(String(anchors[i].getAttribute("href")));
    }
  }
  return out;
}
