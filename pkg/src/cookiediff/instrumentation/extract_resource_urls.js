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

  // src/extractResourceUrls.ts
  var extractResourceUrls_exports = {};
  __export(extractResourceUrls_exports, {
    run: () => run
  });
  function run() {
    const out = [];
    try {
      const perf = window.performance;
      if (perf && typeof perf.getEntriesByType === "function") {
        const nav = perf.getEntriesByType("navigation") || [];
        for (let i = 0; i < nav.length; i++) {
          if (nav[i] && nav[i].name) {
            out.push(String(nav[i].name));
          }
        }
        const res = perf.getEntriesByType("resource") || [];
        for (let j = 0; j < res.length; j++) {
          if (res[j] && res[j].name) {
            out.push(String(res[j].name));
          }
        }
      }
    } catch (e) {
    }
    return out;
  }
  return __toCommonJS(extractResourceUrls_exports);
})();
return __asset.run.apply(null, arguments);
