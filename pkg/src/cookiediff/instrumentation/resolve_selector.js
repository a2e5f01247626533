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

  // src/resolveSelector.ts
  var resolveSelector_exports = {};
  __export(resolveSelector_exports, {
    run: () => run
  });

  // src/dom.ts
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

  // src/resolveSelector.ts
  function run(selector) {
    let matches;
    try {
      matches = document.querySelectorAll(selector);
    } catch (e) {
      return { found: false, visible: false, matches: 0 };
    }
    if (matches.length !== 1) {
      return { found: false, visible: false, matches: matches.length };
    }
    return { found: true, visible: isVisible(matches[0]), matches: 1 };
  }
  return __toCommonJS(resolveSelector_exports);
})();
return __asset.run.apply(null, arguments);
