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

  // src/extractImageSources.ts
  var extractImageSources_exports = {};
  __export(extractImageSources_exports, {
    run: () => run
  });
  function run() {
    const out = [];
    const images = document.getElementsByTagName("img");
    for (let i = 0; i < images.length; i++) {
      if (images[i].hasAttribute("src")) {
        out.push(String(images[i].getAttribute("src")));
      }
    }
    return out;
  }
  return __toCommonJS(extractImageSources_exports);
})();
return __asset.run.apply(null, arguments);
