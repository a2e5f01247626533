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

  // src/extractLinkTargets.ts
  var extractLinkTargets_exports = {};
  __export(extractLinkTargets_exports, {
    run: () => run
  });
  function run() {
    const out = [];
    const anchors = document.getElementsByTagName("a");
    for (let i = 0; i < anchors.length; i++) {
      if (anchors[i].hasAttribute("href")) {
        out.push(String(anchors[i].getAttribute("href")));
      }
    }
    return out;
  }
  return __toCommonJS(extractLinkTargets_exports);
})();
return __asset.run.apply(null, arguments);
