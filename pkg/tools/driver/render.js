"use strict";
// Deterministic rasterizer: paints absolutely positioned boxes with pixel
// geometry and solid background colors onto a white canvas, in document
// order. Anything fancier (text, borders, stacking contexts) is out of
// scope; fixture pages are authored within this model.

const { PNG } = require("pngjs");

const NAMED_COLORS = {
  white: { r: 255, g: 255, b: 255, a: 1 },
  black: { r: 0, g: 0, b: 0, a: 1 },
  red: { r: 255, g: 0, b: 0, a: 1 },
  green: { r: 0, g: 128, b: 0, a: 1 },
  blue: { r: 0, g: 0, b: 255, a: 1 },
  transparent: { r: 0, g: 0, b: 0, a: 0 },
};

function parseColor(value) {
  if (!value || typeof value !== "string") return null;
  const text = value.trim().toLowerCase();
  if (text in NAMED_COLORS) return NAMED_COLORS[text];
  let m = /^rgba?\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*([0-9.]+)\s*)?\)$/.exec(text);
  if (m) {
    return { r: +m[1], g: +m[2], b: +m[3], a: m[4] === undefined ? 1 : +m[4] };
  }
  m = /^#([0-9a-f]{6})$/.exec(text);
  if (m) {
    const n = parseInt(m[1], 16);
    return { r: (n >> 16) & 255, g: (n >> 8) & 255, b: n & 255, a: 1 };
  }
  m = /^#([0-9a-f]{3})$/.exec(text);
  if (m) {
    const n = m[1];
    return {
      r: parseInt(n[0] + n[0], 16),
      g: parseInt(n[1] + n[1], 16),
      b: parseInt(n[2] + n[2], 16),
      a: 1,
    };
  }
  return null;
}

function parsePx(value) {
  if (typeof value !== "string") return null;
  const m = /^(-?[0-9.]+)px$/.exec(value.trim());
  if (m) return parseFloat(m[1]);
  if (value.trim() === "0") return 0;
  return null;
}

function fillRect(png, left, top, width, height, color) {
  const x0 = Math.max(0, Math.round(left));
  const y0 = Math.max(0, Math.round(top));
  const x1 = Math.min(png.width, Math.round(left + width));
  const y1 = Math.min(png.height, Math.round(top + height));
  for (let y = y0; y < y1; y++) {
    for (let x = x0; x < x1; x++) {
      const i = (y * png.width + x) * 4;
      png.data[i] = color.r;
      png.data[i + 1] = color.g;
      png.data[i + 2] = color.b;
      png.data[i + 3] = 255;
    }
  }
}

function render(dom, viewport) {
  const png = new PNG({ width: viewport.width, height: viewport.height });
  png.data.fill(255);
  const win = dom.window;
  const doc = win.document;
  const body = doc.body;
  if (!body) return PNG.sync.write(png);

  const bodyStyle = win.getComputedStyle(body);
  const bodyColor = parseColor(bodyStyle.backgroundColor);
  if (bodyColor && bodyColor.a > 0) {
    fillRect(png, 0, 0, viewport.width, viewport.height, bodyColor);
  }

  function paint(el) {
    let cs;
    try {
      cs = win.getComputedStyle(el);
    } catch (e) {
      return;
    }
    if (cs.display === "none") return;
    if (cs.visibility !== "hidden" && cs.visibility !== "collapse" && cs.position === "absolute") {
      const left = parsePx(cs.left);
      const top = parsePx(cs.top);
      const width = parsePx(cs.width);
      const height = parsePx(cs.height);
      const color = parseColor(cs.backgroundColor);
      if (left !== null && top !== null && width !== null && height !== null && color && color.a > 0) {
        fillRect(png, left, top, width, height, color);
      }
    }
    if (el.tagName === "IFRAME") return;
    for (let i = 0; i < el.children.length; i++) {
      paint(el.children[i]);
    }
  }

  for (let i = 0; i < body.children.length; i++) {
    paint(body.children[i]);
  }
  return PNG.sync.write(png);
}

module.exports = { render, parseColor, parsePx };
