/**
 * Collect the src attribute of every img element, duplicates preserved.
 * Images without a src attribute contribute nothing: there is no token
 * to count for an absent attribute.
 */
export function run(): string[] {
  const out: string[] = [];
  const images = document.getElementsByTagName("img");
  for (let i = 0; i < images.length; i++) {
    if (images[i].hasAttribute("src")) {
      out.push(String(images[i].getAttribute("src")));
    }
  }
  return out;
}
