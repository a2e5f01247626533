"use strict";
// A WebDriver remote end over jsdom, for hermetic tests. Implements only
// the endpoints the crawler uses: session lifecycle, navigation, script
// execution, screenshots, element lookup and clicks, window bookkeeping.

const http = require("http");
const browser = require("./browser");

const { WireError } = browser;

function sendValue(res, status, value) {
  const body = JSON.stringify({ value });
  res.writeHead(status, {
    "Content-Type": "application/json; charset=utf-8",
    "Content-Length": Buffer.byteLength(body),
    "Cache-Control": "no-cache",
  });
  res.end(body);
}

function sendError(res, err) {
  const status = err instanceof WireError ? err.status : 500;
  const error = err instanceof WireError ? err.error : "unknown error";
  const message = err instanceof WireError ? err.wireMessage : String((err && err.message) || err);
  sendValue(res, status, { error, message, stacktrace: "" });
}

function readBody(req) {
  return new Promise((resolve, reject) => {
    const chunks = [];
    req.on("data", (c) => chunks.push(c));
    req.on("end", () => {
      if (!chunks.length) {
        resolve({});
        return;
      }
      try {
        resolve(JSON.parse(Buffer.concat(chunks).toString("utf-8")));
      } catch (e) {
        reject(new WireError("invalid argument", "request body is not JSON", 400));
      }
    });
    req.on("error", reject);
  });
}

const ROUTES = [
  {
    method: "GET",
    pattern: /^\/status$/,
    handler: async () => ({ ready: true, message: "cookiediff stub driver" }),
  },
  {
    method: "POST",
    pattern: /^\/session$/,
    handler: async (m, body) => {
      const session = await browser.createSession(body);
      return {
        sessionId: session.id,
        capabilities: {
          browserName: "jsdom-stub",
          "moz:profile": null,
          viewport: session.viewport,
        },
      };
    },
  },
  {
    method: "DELETE",
    pattern: /^\/session\/([^/]+)$/,
    handler: async (m) => {
      browser.deleteSession(m[1]);
      return null;
    },
  },
  {
    method: "POST",
    pattern: /^\/session\/([^/]+)\/url$/,
    handler: async (m, body) => {
      const session = browser.getSession(m[1]);
      if (!body || typeof body.url !== "string") {
        throw new WireError("invalid argument", "missing url", 400);
      }
      await browser.navigate(session, body.url);
      return null;
    },
  },
  {
    method: "GET",
    pattern: /^\/session\/([^/]+)\/url$/,
    handler: async (m) => {
      const session = browser.getSession(m[1]);
      return session.window ? session.window.url : "about:blank";
    },
  },
  {
    method: "POST",
    pattern: /^\/session\/([^/]+)\/execute\/sync$/,
    handler: async (m, body) => {
      const session = browser.getSession(m[1]);
      if (!body || typeof body.script !== "string") {
        throw new WireError("invalid argument", "missing script", 400);
      }
      return browser.execute(session, body.script, body.args || []);
    },
  },
  {
    method: "GET",
    pattern: /^\/session\/([^/]+)\/screenshot$/,
    handler: async (m) => browser.screenshot(browser.getSession(m[1])),
  },
  {
    method: "POST",
    pattern: /^\/session\/([^/]+)\/element$/,
    handler: async (m, body) => {
      const session = browser.getSession(m[1]);
      return browser.findElement(session, body.using, body.value);
    },
  },
  {
    method: "POST",
    pattern: /^\/session\/([^/]+)\/element\/([^/]+)\/click$/,
    handler: async (m) => {
      const session = browser.getSession(m[1]);
      await browser.clickElement(session, m[2]);
      return null;
    },
  },
  {
    method: "GET",
    pattern: /^\/session\/([^/]+)\/window\/handles$/,
    handler: async (m) => {
      browser.getSession(m[1]);
      return ["main"];
    },
  },
  {
    method: "GET",
    pattern: /^\/session\/([^/]+)\/window$/,
    handler: async (m) => {
      browser.getSession(m[1]);
      return "main";
    },
  },
  {
    method: "POST",
    pattern: /^\/session\/([^/]+)\/window$/,
    handler: async (m, body) => {
      browser.getSession(m[1]);
      if (!body || body.handle !== "main") {
        throw new WireError("no such window", `unknown handle ${body && body.handle}`, 404);
      }
      return null;
    },
  },
  {
    method: "DELETE",
    pattern: /^\/session\/([^/]+)\/window$/,
    handler: async (m) => {
      browser.deleteSession(m[1]);
      return [];
    },
  },
  {
    method: "GET",
    pattern: /^\/session\/([^/]+)\/window\/rect$/,
    handler: async (m) => {
      const session = browser.getSession(m[1]);
      return { x: 0, y: 0, width: session.viewport.width, height: session.viewport.height };
    },
  },
  {
    method: "POST",
    pattern: /^\/session\/([^/]+)\/window\/rect$/,
    handler: async (m, body) => {
      const session = browser.getSession(m[1]);
      if (body && typeof body.width === "number") session.viewport.width = Math.round(body.width);
      if (body && typeof body.height === "number") session.viewport.height = Math.round(body.height);
      if (session.window) {
        try {
          const win = session.window.dom.window;
          win.dispatchEvent(new win.Event("resize"));
        } catch (e) {
          /* window closed */
        }
      }
      return { x: 0, y: 0, width: session.viewport.width, height: session.viewport.height };
    },
  },
  {
    method: "GET",
    pattern: /^\/session\/([^/]+)\/timeouts$/,
    handler: async (m) => browser.getSession(m[1]).timeouts,
  },
  {
    method: "POST",
    pattern: /^\/session\/([^/]+)\/timeouts$/,
    handler: async (m, body) => {
      const session = browser.getSession(m[1]);
      for (const key of ["implicit", "pageLoad", "script"]) {
        if (body && typeof body[key] === "number") session.timeouts[key] = body[key];
      }
      return null;
    },
  },
];

const server = http.createServer(async (req, res) => {
  const path = (req.url || "/").split("?")[0];
  for (const route of ROUTES) {
    if (req.method !== route.method) continue;
    const m = route.pattern.exec(path);
    if (!m) continue;
    try {
      const body = await readBody(req);
      const value = await route.handler(m, body);
      sendValue(res, 200, value === undefined ? null : value);
    } catch (e) {
      sendError(res, e);
    }
    return;
  }
  sendError(res, new WireError("unknown command", `${req.method} ${path}`, 404));
});

const port = parseInt(process.env.PORT || process.argv[2] || "0", 10);
server.listen(port, "127.0.0.1", () => {
  console.log(`cookiediff-driver listening on http://127.0.0.1:${server.address().port}`);
});

process.on("SIGTERM", () => {
  server.close(() => process.exit(0));
  setTimeout(() => process.exit(0), 500).unref();
});
