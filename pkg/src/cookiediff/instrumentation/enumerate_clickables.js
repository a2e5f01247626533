// Generated from frontend/src by frontend/scripts/build.mjs.
// Edit the TypeScript source and run `npm run build`; do not edit this file.
"use strict";
var __asset = (() => {
  var __defProp = Object.defineProperty;
  var __getOwnPropDesc = Object.getOwnPropertyDescriptor;
  var __getOwnPropNames = Object.getOwnPropertyNames;
  var __hasOwnProp = Object.prototype.hasOwnProperty;
  var __export = (target, all) => {
    for (var name in all)
      __defProp(target, name, { get: all[name], enumerable: true });
  };
  var __copyProps = (to, from, except, desc) => {
    if (from && typeof from === "object" || typeof from === "function") {
      for (let key of __getOwnPropNames(from))
        if (!__hasOwnProp.call(to, key) && key !== except)
          __defProp(to, key, { get: () => from[key], enumerable: !(desc = __getOwnPropDesc(from, key)) || desc.enumerable });
    }
    return to;
  };
  var __toCommonJS = (mod) => __copyProps(__defProp({}, "__esModule", { value: true }), mod);

  // src/enumerateClickables.ts
  var enumerateClickables_exports = {};
  __export(enumerateClickables_exports, {
    run: () => run
  });

  // src/dom.ts
  function cssEscape(value) {
    const css = window.CSS;
    if (css && typeof css.escape === "function") {
      return css.escape(value);
    }
    const s = String(value);
    let out = "";
    for (let i = 0; i < s.length; i++) {
      const ch = s.charAt(i);
      const code = s.charCodeAt(i);
      if (code === 0) {
        out += "\uFFFD";
      } else if (code >= 48 && code <= 57 && i === 0 || code >= 48 && code <= 57 && i === 1 && s.charAt(0) === "-") {
        out += "\\" + code.toString(16) + " ";
      } else if (i === 0 && code === 45 && s.length === 1) {
        out += "\\" + ch;
      } else if (code >= 128 || code === 45 || code === 95 || code >= 48 && code <= 57 || code >= 65 && code <= 90 || code >= 97 && code <= 122) {
        out += ch;
      } else {
        out += "\\" + ch;
      }
    }
    return out;
  }
  function isVisible(el) {
    let cs;
    try {
      cs = window.getComputedStyle(el);
    } catch (e) {
      return false;
    }
    if (cs && (cs.visibility === "hidden" || cs.visibility === "collapse")) {
      return false;
    }
    let node = el;
    while (node && node.nodeType === 1) {
      try {
        cs = window.getComputedStyle(node);
      } catch (e) {
        return false;
      }
      if (cs && cs.display === "none") {
        return false;
      }
      node = node.parentElement;
    }
    return true;
  }
  function kindOf(el) {
    const tag = el.tagName.toLowerCase();
    if (tag === "button") {
      return "button";
    }
    if (tag === "input") {
      const type = (el.getAttribute("type") || "").toLowerCase();
      if (type === "button" || type === "submit" || type === "reset") {
        return "button";
      }
    }
    if (tag === "a" && el.hasAttribute("href")) {
      return "link";
    }
    if (el.hasAttribute("onclick")) {
      return "onclick";
    }
    let cs;
    try {
      cs = window.getComputedStyle(el);
    } catch (e) {
      return null;
    }
    if (cs && cs.cursor === "pointer") {
      return "pointer";
    }
    return null;
  }
  function uniqueFor(selector, el) {
    let found;
    try {
      found = document.querySelectorAll(selector);
    } catch (e) {
      return false;
    }
    return found.length === 1 && found[0] === el;
  }
  function mintSelector(el) {
    if (!el.isConnected) {
      throw new Error("cannot mint a selector for a detached element");
    }
    if (el.id) {
      const byId = "#" + cssEscape(el.id);
      if (uniqueFor(byId, el)) {
        return byId;
      }
    }
    const tag = el.tagName.toLowerCase();
    for (let c = 0; c < el.classList.length; c++) {
      const cls = el.classList.item(c);
      if (!cls) {
        continue;
      }
      const byClass = tag + "." + cssEscape(cls);
      if (uniqueFor(byClass, el)) {
        return byClass;
      }
    }
    if (uniqueFor(tag, el)) {
      return tag;
    }
    const path = [];
    let node = el;
    while (node && node.nodeType === 1 && node.tagName.toLowerCase() !== "html") {
      if (node !== el && node.id) {
        const anchor = "#" + cssEscape(node.id);
        let anchorMatches;
        try {
          anchorMatches = document.querySelectorAll(anchor);
        } catch (e) {
          anchorMatches = [];
        }
        if (anchorMatches.length === 1) {
          path.unshift(anchor);
          break;
        }
      }
      let index = 1;
      let sib = node;
      while (sib = sib.previousElementSibling) {
        index++;
      }
      path.unshift(node.tagName.toLowerCase() + ":nth-child(" + index + ")");
      node = node.parentElement;
    }
    const selector = path.join(" > ");
    if (uniqueFor(selector, el)) {
      return selector;
    }
    return null;
  }

  // src/enumerateClickables.ts
  function run() {
    const out = [];
    if (!document.body) {
      return out;
    }
    const candidates = [document.body];
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
      let selector;
      try {
        selector = mintSelector(el);
      } catch (e) {
        selector = null;
      }
      if (!selector) {
        continue;
      }
      out.push({ selector, kind, visible: isVisible(el) });
    }
    return out;
  }
  return __toCommonJS(enumerateClickables_exports);
})();
return __asset.run.apply(null, arguments);
