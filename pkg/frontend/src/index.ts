export {
  cssEscape,
  isVisible,
  kindOf,
  mintSelector,
  uniqueFor,
} from "./dom";
export type { ClickableDescriptor, ClickableKind, ResolveResult } from "./dom";
export { run as enumerateClickables } from "./enumerateClickables";
export { run as resolveSelector } from "./resolveSelector";
export { run as extractText } from "./extractText";
export { run as extractImageSources } from "./extractImageSources";
export { run as extractLinkTargets } from "./extractLinkTargets";
export { run as extractResourceUrls } from "./extractResourceUrls";
export { run as scrollTop } from "./scrollTop";
export { run as pageState } from "./pageState";
export type { PageState } from "./pageState";
