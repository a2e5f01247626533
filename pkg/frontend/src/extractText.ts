/**
 * Extract the rendered text of the page body.
 *
 * Prefers the native innerText because it already applies visibility and
 * formatting rules. Engines without innerText get a manual walk that
 * skips script-like containers and anything styled invisible, inserting
 * separators so words from adjacent blocks do not fuse. Downstream
 * consumers tokenize on whitespace, so the exact separator shape does
 * not matter, only word boundaries.
 */
export function run(): string {
  const body = document.body;
  if (!body) {
    return "";
  }
  const native = (body as HTMLElement & { innerText?: unknown }).innerText;
  if (typeof native === "string") {
    return native;
  }
  const parts: string[] = [];
  function walk(node: Node): void {
    if (node.nodeType === 3) {
      parts.push(node.nodeValue || "");
      return;
    }
    if (node.nodeType !== 1) {
      return;
    }
    const el = node as Element;
    const tag = el.tagName.toLowerCase();
    if (tag === "script" || tag === "style" || tag === "noscript" || tag === "template") {
      return;
    }
    let cs: CSSStyleDeclaration | null;
    try {
      cs = window.getComputedStyle(el);
    } catch {
      cs = null;
    }
    if (cs && (cs.display === "none" || cs.visibility === "hidden" || cs.visibility === "collapse")) {
      return;
    }
    const kids = el.childNodes;
    for (let i = 0; i < kids.length; i++) {
      walk(kids[i]);
    }
    if (cs && cs.display !== "inline") {
      parts.push("\n");
    }
  }
  walk(body);
  return parts.join(" ");
}
