import type { ClickableDescriptor } from "../src/dom";

/**
 * Authored page fixtures with hand-computed expected descriptor lists.
 *
 * Every expectation was derived by applying the classification and
 * minting rules by hand: document order is body first and then its
 * descendants, kind priority is button over link over onclick over
 * pointer, and selector minting prefers id, then tag.class, then bare
 * tag, then an nth-child path anchored at the nearest ancestor with a
 * unique id.
 */
export interface PageFixture {
  name: string;
  body: string;
  css?: string;
  expected: ClickableDescriptor[];
}

export const FIXTURES: PageFixture[] = [
  {
    name: "basic-mix",
    body: [
      '<button id="save">Save</button>',
      '<button id="cancel">Cancel</button>',
      '<a href="/a" id="first">A</a>',
      '<a href="/b" id="second">B</a>',
      '<a href="/c" id="third">C</a>',
      '<div onclick="void 0" id="menu">Menu</div>',
    ].join("\n"),
    expected: [
      { selector: "#save", kind: "button", visible: true },
      { selector: "#cancel", kind: "button", visible: true },
      { selector: "#first", kind: "link", visible: true },
      { selector: "#second", kind: "link", visible: true },
      { selector: "#third", kind: "link", visible: true },
      { selector: "#menu", kind: "onclick", visible: true },
    ],
  },
  {
    name: "empty-body",
    body: "",
    expected: [],
  },
  {
    name: "priority-order",
    body: [
      '<button id="multi" onclick="void 0" style="cursor: pointer">Do</button>',
      '<input type="submit" id="send" onclick="void 0">',
      '<a href="/x" id="styled" style="cursor: pointer" onclick="void 0">X</a>',
      '<a id="bare" onclick="void 0">No href</a>',
      '<div id="handler" onclick="void 0" style="cursor: pointer">D</div>',
      '<span id="finger" style="cursor: pointer">P</span>',
    ].join("\n"),
    expected: [
      { selector: "#multi", kind: "button", visible: true },
      { selector: "#send", kind: "button", visible: true },
      { selector: "#styled", kind: "link", visible: true },
      { selector: "#bare", kind: "onclick", visible: true },
      { selector: "#handler", kind: "onclick", visible: true },
      { selector: "#finger", kind: "pointer", visible: true },
    ],
  },
  {
    name: "pointer-from-stylesheet",
    css: ".hot { cursor: pointer; } #cold { cursor: default; }",
    body: [
      '<div class="hot" id="hot1">Hot</div>',
      '<div id="cold" class="hot">Cold</div>',
      '<p id="bystander">Plain</p>',
    ].join("\n"),
    expected: [{ selector: "#hot1", kind: "pointer", visible: true }],
  },
  {
    name: "hidden-elements",
    body: [
      '<button id="shown">Shown</button>',
      '<button id="gone" style="display: none">Gone</button>',
      '<a href="/h" id="ghost" style="visibility: hidden">Ghost</a>',
      '<div style="display: none"><button id="nested">Nested</button></div>',
    ].join("\n"),
    expected: [
      { selector: "#shown", kind: "button", visible: true },
      { selector: "#gone", kind: "button", visible: false },
      { selector: "#ghost", kind: "link", visible: false },
      { selector: "#nested", kind: "button", visible: false },
    ],
  },
  {
    name: "class-selectors",
    body: [
      '<a href="/n" class="nav primary">Nav</a>',
      '<a href="/m" class="nav">Other</a>',
      '<button class="cta">Go</button>',
    ].join("\n"),
    expected: [
      { selector: "a.primary", kind: "link", visible: true },
      { selector: "body:nth-child(2) > a:nth-child(2)", kind: "link", visible: true },
      { selector: "button.cta", kind: "button", visible: true },
    ],
  },
  {
    name: "nested-list",
    body: [
      '<ul id="m">',
      '<li onclick="void 0">One</li>',
      '<li onclick="void 0">Two</li>',
      '<li onclick="void 0">Three</li>',
      "</ul>",
    ].join("\n"),
    expected: [
      { selector: "#m > li:nth-child(1)", kind: "onclick", visible: true },
      { selector: "#m > li:nth-child(2)", kind: "onclick", visible: true },
      { selector: "#m > li:nth-child(3)", kind: "onclick", visible: true },
    ],
  },
  {
    name: "duplicate-ids",
    body: [
      '<div id="dup" onclick="void 0">First</div>',
      '<section><div id="dup" onclick="void 0">Second</div></section>',
    ].join("\n"),
    expected: [
      {
        selector: "body:nth-child(2) > div:nth-child(1)",
        kind: "onclick",
        visible: true,
      },
      {
        selector: "body:nth-child(2) > section:nth-child(2) > div:nth-child(1)",
        kind: "onclick",
        visible: true,
      },
    ],
  },
  {
    name: "awkward-identifiers",
    body: [
      '<button id="menu:main">Colon</button>',
      '<button id="9lives">Digit</button>',
    ].join("\n"),
    expected: [
      { selector: "#menu\\:main", kind: "button", visible: true },
      { selector: "#\\39 lives", kind: "button", visible: true },
    ],
  },
  {
    name: "static-page",
    body: [
      '<h1 id="headline">Static page</h1>',
      '<p class="copy">Deterministic content.</p>',
      '<nav><a href="/p/1">First</a><a href="/p/2">Second</a><a href="/p/3">Third</a></nav>',
      '<img src="/img/logo.png" alt="logo">',
      '<button class="cta">Subscribe</button>',
    ].join("\n"),
    expected: [
      {
        selector: "body:nth-child(2) > nav:nth-child(3) > a:nth-child(1)",
        kind: "link",
        visible: true,
      },
      {
        selector: "body:nth-child(2) > nav:nth-child(3) > a:nth-child(2)",
        kind: "link",
        visible: true,
      },
      {
        selector: "body:nth-child(2) > nav:nth-child(3) > a:nth-child(3)",
        kind: "link",
        visible: true,
      },
      { selector: "button.cta", kind: "button", visible: true },
    ],
  },
];

export function fixtureByName(name: string): PageFixture {
  const found = FIXTURES.find((f) => f.name === name);
  if (!found) {
    throw new Error(`no fixture named ${name}`);
  }
  return found;
}
