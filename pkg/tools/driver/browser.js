"use strict";
// Session state and page semantics for the stub driver: navigation over a
// host-remap table, a cookie jar that can refuse third-party access,
// script execution, element lookup, and click-driven navigation.

const http = require("http");
const crypto = require("crypto");
const jsdom = require("jsdom");
const { render } = require("./render");

const ELEMENT_KEY = "element-6066-11e4-a52e-4f735466cecf";
const MAX_REDIRECTS = 10;

class WireError extends Error {
  constructor(error, message, status) {
    super(`${error}: ${message}`);
    this.error = error;
    this.wireMessage = message;
    this.status = status || 500;
  }
}

function apexOf(host) {
  const labels = String(host).toLowerCase().split(".");
  if (labels.every((l) => /^\d+$/.test(l))) return labels.join(".");
  if (labels.length <= 2) return labels.join(".");
  return labels.slice(-2).join(".");
}

// Cookie jar with an optional third-party policy: when blocking is on,
// any cookie read or write from a context whose registrable domain is not
// the first party's is silently refused, mirroring the browser pref.
class PolicyJar extends jsdom.CookieJar {
  constructor() {
    super(undefined, { looseMode: true, allowSpecialUseDomain: true });
    this.blockThirdParty = false;
    this.firstPartyHost = null;
  }

  _isThirdParty(url) {
    if (!this.blockThirdParty || !this.firstPartyHost) return false;
    try {
      return apexOf(new URL(url).hostname) !== apexOf(this.firstPartyHost);
    } catch (e) {
      return true;
    }
  }

  setCookie(cookie, url, opts, cb) {
    if (typeof opts === "function") {
      cb = opts;
      opts = {};
    }
    if (this._isThirdParty(url)) {
      if (cb) cb(null, undefined);
      return Promise.resolve(undefined);
    }
    return super.setCookie(cookie, url, opts, cb);
  }

  setCookieSync(cookie, url, opts) {
    if (this._isThirdParty(url)) return undefined;
    return super.setCookieSync(cookie, url, opts);
  }

  getCookieString(url, opts, cb) {
    if (typeof opts === "function") {
      cb = opts;
      opts = {};
    }
    if (this._isThirdParty(url)) {
      if (cb) cb(null, "");
      return Promise.resolve("");
    }
    return super.getCookieString(url, opts, cb);
  }

  getCookieStringSync(url, opts) {
    if (this._isThirdParty(url)) return "";
    return super.getCookieStringSync(url, opts);
  }

  getCookies(url, opts, cb) {
    if (typeof opts === "function") {
      cb = opts;
      opts = {};
    }
    if (this._isThirdParty(url)) {
      if (cb) cb(null, []);
      return Promise.resolve([]);
    }
    return super.getCookies(url, opts, cb);
  }

  getCookiesSync(url, opts) {
    if (this._isThirdParty(url)) return [];
    return super.getCookiesSync(url, opts);
  }
}

const profiles = new Map(); // profile key -> PolicyJar
const sessions = new Map();

function parseHosts() {
  const raw = process.env.COOKIEDIFF_HOSTS;
  if (!raw) return {};
  try {
    const parsed = JSON.parse(raw);
    const out = {};
    for (const [host, target] of Object.entries(parsed)) {
      out[String(host).toLowerCase()] = String(target);
    }
    return out;
  } catch (e) {
    console.error(`ignoring unparseable COOKIEDIFF_HOSTS: ${e.message}`);
    return {};
  }
}

const HOSTS = parseHosts();

function physicalTarget(urlObj) {
  // The stub refuses to touch anything that is not loopback or explicitly
  // remapped, so tests can never leak onto a real network.
  if (urlObj.protocol !== "http:") {
    if (urlObj.protocol === "https:" && HOSTS[urlObj.hostname.toLowerCase()]) {
      throw new WireError("unknown error", `nssFailure: TLS not offered by ${urlObj.hostname}`);
    }
    throw new WireError("unknown error", `neterror: unsupported scheme ${urlObj.protocol}`);
  }
  const host = urlObj.hostname.toLowerCase();
  const mapped = HOSTS[host];
  if (mapped) {
    const [addr, port] = mapped.split(":");
    return { host: addr, port: parseInt(port || "80", 10) };
  }
  if (host === "localhost" || /^127\./.test(host)) {
    return { host, port: parseInt(urlObj.port || "80", 10) };
  }
  throw new WireError("unknown error", `neterror: dnsNotFound ${host}`);
}

function fetchRaw(session, urlString, timeoutMs, isDocument, redirects) {
  redirects = redirects || 0;
  let urlObj;
  try {
    urlObj = new URL(urlString);
  } catch (e) {
    return Promise.reject(new WireError("invalid argument", `not a URL: ${urlString}`, 400));
  }
  let target;
  try {
    target = physicalTarget(urlObj);
  } catch (e) {
    return Promise.reject(e);
  }
  if (isDocument) {
    session.jar.firstPartyHost = urlObj.hostname;
  }
  let cookie = "";
  try {
    cookie = session.jar.getCookieStringSync(urlString);
  } catch (e) {
    cookie = "";
  }
  const headers = {
    Host: urlObj.host,
    "User-Agent": "cookiediff-stub/1.0",
    Accept: "*/*",
    Connection: "close",
  };
  if (cookie) headers.Cookie = cookie;
  return new Promise((resolve, reject) => {
    const req = http.request(
      {
        host: target.host,
        port: target.port,
        path: urlObj.pathname + urlObj.search,
        method: "GET",
        headers,
      },
      (res) => {
        const setCookies = res.headers["set-cookie"] || [];
        for (const line of setCookies) {
          try {
            session.jar.setCookieSync(line, urlString, { ignoreError: true });
          } catch (e) {
            /* unparseable cookie */
          }
        }
        if (res.statusCode >= 300 && res.statusCode < 400 && res.headers.location) {
          res.resume();
          clearTimeout(timer);
          if (redirects >= MAX_REDIRECTS) {
            reject(new WireError("unknown error", "neterror: too many redirects"));
            return;
          }
          const next = new URL(res.headers.location, urlString).href;
          resolve(fetchRaw(session, next, timeoutMs, isDocument, redirects + 1));
          return;
        }
        const chunks = [];
        res.on("data", (c) => chunks.push(c));
        res.on("end", () => {
          clearTimeout(timer);
          resolve({
            finalUrl: urlString,
            status: res.statusCode,
            contentType: res.headers["content-type"] || "",
            body: Buffer.concat(chunks),
          });
        });
        res.on("error", (err) => {
          clearTimeout(timer);
          reject(new WireError("unknown error", `neterror: ${err.message}`));
        });
      }
    );
    const timer = setTimeout(() => {
      req.destroy(new Error("stub timeout"));
      reject(new WireError("timeout", `navigation to ${urlString} timed out after ${timeoutMs}ms`));
    }, timeoutMs);
    req.on("error", (err) => {
      clearTimeout(timer);
      reject(new WireError("unknown error", `neterror: ${err.message}`));
    });
    req.end();
  });
}

class RecordingLoader extends jsdom.ResourceLoader {
  constructor(session) {
    super();
    this.session = session;
  }

  fetch(urlString, options) {
    this.session.resources.push(urlString);
    const p = fetchRaw(this.session, urlString, this.session.timeouts.pageLoad, false).then(
      (res) => res.body
    );
    p.abort = () => {};
    return p;
  }
}

function patchWindow(win, session) {
  Object.defineProperty(win, "innerWidth", {
    configurable: true,
    get: () => session.viewport.width,
  });
  Object.defineProperty(win, "innerHeight", {
    configurable: true,
    get: () => session.viewport.height,
  });
  Object.defineProperty(win, "devicePixelRatio", { configurable: true, get: () => 1 });
  const docUrl = session.pendingUrl;
  win.performance.getEntriesByType = (type) => {
    if (type === "navigation") return [{ name: docUrl, entryType: "navigation" }];
    if (type === "resource") {
      return session.resources.map((u) => ({ name: u, entryType: "resource" }));
    }
    return [];
  };
}

function closeWindow(session) {
  if (session.window) {
    try {
      session.window.dom.window.close();
    } catch (e) {
      /* already closed */
    }
    session.window = null;
  }
}

function waitForLoad(dom, capMs) {
  const doc = dom.window.document;
  if (doc.readyState === "complete") return Promise.resolve();
  return new Promise((resolve) => {
    let done = false;
    const finish = () => {
      if (!done) {
        done = true;
        clearTimeout(timer);
        resolve();
      }
    };
    const timer = setTimeout(finish, capMs);
    dom.window.addEventListener("load", finish);
  });
}

async function installWindow(session, html, url) {
  closeWindow(session);
  session.resources = [];
  session.elements = new Map();
  session.pendingUrl = url;
  const dom = new jsdom.JSDOM(html, {
    url,
    contentType: "text/html",
    runScripts: "dangerously",
    resources: new RecordingLoader(session),
    cookieJar: session.jar,
    pretendToBeVisual: true,
    virtualConsole: session.virtualConsole,
    beforeParse: (win) => patchWindow(win, session),
  });
  session.window = { dom, url };
  await waitForLoad(dom, session.timeouts.pageLoad);
}

async function navigate(session, urlString) {
  const res = await fetchRaw(session, urlString, session.timeouts.pageLoad, true);
  await installWindow(session, res.body.toString("utf-8"), res.finalUrl);
}

async function installErrorWindow(session, urlString) {
  // A navigation that could not fetch anything still moves the browser to
  // the target address with nothing rendered, like a neterror page.
  try {
    session.jar.firstPartyHost = new URL(urlString).hostname;
  } catch (e) {
    /* leave as is */
  }
  await installWindow(session, "<!DOCTYPE html><html><head></head><body></body></html>", urlString);
}

async function createSession(body) {
  const caps = ((body || {}).capabilities || {}).alwaysMatch || {};
  const ffOptions = caps["moz:firefoxOptions"] || {};
  const prefs = ffOptions.prefs || {};
  const args = ffOptions.args || [];
  const behavior = prefs["network.cookie.cookieBehavior"];
  let width = 1366;
  let height = 768;
  let profileKey = null;
  for (let i = 0; i < args.length; i++) {
    if (args[i] === "-width" && args[i + 1]) width = parseInt(args[i + 1], 10) || width;
    if (args[i] === "-height" && args[i + 1]) height = parseInt(args[i + 1], 10) || height;
    if (args[i] === "-profile" && args[i + 1]) profileKey = String(args[i + 1]);
  }
  let jar;
  if (profileKey) {
    if (!profiles.has(profileKey)) profiles.set(profileKey, new PolicyJar());
    jar = profiles.get(profileKey);
  } else {
    jar = new PolicyJar();
  }
  jar.blockThirdParty = behavior === 1;
  const timeouts = Object.assign(
    { implicit: 0, pageLoad: 300000, script: 30000 },
    caps.timeouts || {}
  );
  const session = {
    id: crypto.randomUUID(),
    jar,
    viewport: { width, height },
    timeouts,
    window: null,
    elements: new Map(),
    nextElementId: 1,
    resources: [],
    pendingUrl: "about:blank",
    virtualConsole: new jsdom.VirtualConsole(),
  };
  sessions.set(session.id, session);
  // Sessions start on a blank page, like a fresh browser window.
  await installWindow(session, "<!DOCTYPE html><html><head></head><body></body></html>", "about:blank");
  return session;
}

function getSession(id) {
  const session = sessions.get(id);
  if (!session) throw new WireError("invalid session id", `no session ${id}`, 404);
  return session;
}

function deleteSession(id) {
  const session = sessions.get(id);
  if (session) {
    closeWindow(session);
    sessions.delete(id);
  }
}

function registerElement(session, el) {
  const id = `el-${session.nextElementId++}`;
  session.elements.set(id, el);
  return id;
}

function requireWindow(session) {
  if (!session.window) throw new WireError("no such window", "no page loaded", 404);
  return session.window;
}

function serialize(session, value, depth, seen) {
  if (depth > 64) return null;
  if (value === null || value === undefined) return null;
  const t = typeof value;
  if (t === "boolean" || t === "string") return value;
  if (t === "number") return Number.isFinite(value) ? value : null;
  if (t === "function" || t === "symbol" || t === "bigint") return null;
  if (seen.has(value)) return null;
  seen.add(value);
  if (typeof value.nodeType === "number" && value.nodeType === 1) {
    return { [ELEMENT_KEY]: registerElement(session, value) };
  }
  if (Array.isArray(value) || (typeof value.length === "number" && typeof value.item === "function")) {
    const out = [];
    for (let i = 0; i < value.length; i++) {
      out.push(serialize(session, value[i], depth + 1, seen));
    }
    return out;
  }
  const out = {};
  for (const key of Object.keys(value)) {
    const v = serialize(session, value[key], depth + 1, seen);
    if (v !== undefined) out[key] = v;
  }
  return out;
}

function deserialize(session, value) {
  if (Array.isArray(value)) return value.map((v) => deserialize(session, v));
  if (value && typeof value === "object") {
    if (typeof value[ELEMENT_KEY] === "string") {
      const el = session.elements.get(value[ELEMENT_KEY]);
      if (!el) throw new WireError("no such element", `unknown element ${value[ELEMENT_KEY]}`, 404);
      return el;
    }
    const out = {};
    for (const key of Object.keys(value)) out[key] = deserialize(session, value[key]);
    return out;
  }
  return value;
}

function execute(session, script, args) {
  const { dom } = requireWindow(session);
  const win = dom.window;
  const realArgs = (args || []).map((a) => deserialize(session, a));
  let fn;
  try {
    fn = win.eval(`(function () {\n${script}\n})`);
  } catch (e) {
    throw new WireError("javascript error", `compile: ${e && e.message ? e.message : e}`, 500);
  }
  let raw;
  try {
    raw = fn.apply(win, realArgs);
  } catch (e) {
    throw new WireError("javascript error", String(e && e.message ? e.message : e), 500);
  }
  return serialize(session, raw, 0, new Set());
}

function findElement(session, using, value) {
  if (using !== "css selector") {
    throw new WireError("invalid argument", `unsupported locator ${using}`, 400);
  }
  const { dom } = requireWindow(session);
  let el;
  try {
    el = dom.window.document.querySelector(value);
  } catch (e) {
    throw new WireError("invalid selector", String(e && e.message ? e.message : e), 400);
  }
  if (!el) throw new WireError("no such element", `nothing matches ${value}`, 404);
  return { [ELEMENT_KEY]: registerElement(session, el) };
}

function styleVisible(win, el) {
  let cs;
  try {
    cs = win.getComputedStyle(el);
  } catch (e) {
    return false;
  }
  if (cs.visibility === "hidden" || cs.visibility === "collapse") return false;
  let node = el;
  while (node && node.nodeType === 1) {
    try {
      if (win.getComputedStyle(node).display === "none") return false;
    } catch (e) {
      return false;
    }
    node = node.parentElement;
  }
  return true;
}

async function clickElement(session, elementId) {
  const { dom } = requireWindow(session);
  const win = dom.window;
  const el = session.elements.get(elementId);
  if (!el) throw new WireError("no such element", `unknown element id ${elementId}`, 404);
  if (!el.isConnected) {
    throw new WireError("stale element reference", "element no longer in the document", 404);
  }
  if (!styleVisible(win, el)) {
    throw new WireError("element not interactable", "element is hidden", 400);
  }
  const anchor = typeof el.closest === "function" ? el.closest("a[href]") : null;
  const event = new win.MouseEvent("click", { bubbles: true, cancelable: true, view: win });
  const proceed = el.dispatchEvent(event);
  if (anchor && proceed) {
    const href = anchor.getAttribute("href");
    let target;
    try {
      target = new URL(href, session.window.url);
    } catch (e) {
      return;
    }
    if (target.protocol === "http:" || target.protocol === "https:") {
      try {
        await navigate(session, target.href);
      } catch (e) {
        await installErrorWindow(session, target.href);
      }
    }
  }
}

function screenshot(session) {
  const { dom } = requireWindow(session);
  return render(dom, session.viewport).toString("base64");
}

module.exports = {
  ELEMENT_KEY,
  WireError,
  PolicyJar,
  apexOf,
  clickElement,
  createSession,
  deleteSession,
  execute,
  findElement,
  getSession,
  navigate,
  installErrorWindow,
  screenshot,
  sessions,
};
