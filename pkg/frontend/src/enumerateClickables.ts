import { ClickableDescriptor, isVisible, kindOf, mintSelector } from "./dom";

/**
 * Enumerate every clickable element in the top document, in document
 * order, each with a freshly minted unique selector. Elements for which
 * no unique selector exists are left out: a descriptor that cannot be
 * resolved back to one element is useless for replay. An empty list is a
 * valid result.
 */
export function run(): ClickableDescriptor[] {
  const out: ClickableDescriptor[] = [];
  if (!document.body) {
    return out;
  }
  const candidates: Element[] = [document.body];
  const descendants = document.body.getElementsByTagName("*");
  for (let i = 0; i < descendants.length; i++) {
    candidates.push(descendants[i]);
  }
  for (let j = 0; j < candidates.length; j++) {
    const el = candidates[j];
    const kind = kindOf(el);
    if (!kind) {
      continue;
    }
    let selector: string | null;
    try {
      selector = mintSelector(el);
    } catch {
      selector = null;
    }
    if (!selector) {
      continue;
    }
    out.push({ selector: selector, kind: kind, visible: isVisible(el) });
  }
  return out;
}
