import { ResolveResult, isVisible } from "./dom";

/**
 * Report whether a saved selector still identifies exactly one element.
 *
 * Anything other than a single match counts as not found, including a
 * selector that has become ambiguous: replay must act on the same element
 * the selector was minted for, and with two candidates there is no way to
 * know which one that was. Invalid selector syntax also reports not found
 * rather than raising.
 */
export function run(selector: string): ResolveResult {
  let matches: NodeListOf<Element>;
  try {
    matches = document.querySelectorAll(selector);
  } catch {
    return { found: false, visible: false, matches: 0 };
  }
  if (matches.length !== 1) {
    return { found: false, visible: false, matches: matches.length };
  }
  return { found: true, visible: isVisible(matches[0]), matches: 1 };
}
