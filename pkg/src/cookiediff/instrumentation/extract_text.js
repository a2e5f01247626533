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

  // src/extractText.ts
  var extractText_exports = {};
  __export(extractText_exports, {
    run: () => run
  });
  function run() {
    const body = document.body;
    if (!body) {
      return "";
    }
    const native = body.innerText;
    if (typeof native === "string") {
      return native;
    }
    const parts = [];
    function walk(node) {
      if (node.nodeType === 3) {
        parts.push(node.nodeValue || "");
        return;
      }
      if (node.nodeType !== 1) {
        return;
      }
      const el = node;
      const tag = el.tagName.toLowerCase();
      if (tag === "script" || tag === "style" || tag === "noscript" || tag === "template") {
        return;
      }
      let cs;
      try {
        cs = window.getComputedStyle(el);
      } catch (e) {
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
  return __toCommonJS(extractText_exports);
})();
return __asset.run.apply(null, arguments);
