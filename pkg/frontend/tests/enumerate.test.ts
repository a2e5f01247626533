import { describe, expect, it } from "vitest";

import { enumerateClickables } from "../src/index";
import { FIXTURES, fixtureByName } from "./fixtures";
import { loadFixture } from "./harness";

describe("clickable classification", () => {
  for (const fixture of FIXTURES) {
    it(`matches the expected descriptor set on ${fixture.name}`, () => {
      loadFixture(fixture);
      expect(enumerateClickables()).toEqual(fixture.expected);
    });
  }

  it("covers all ten authored fixtures", () => {
    expect(FIXTURES).toHaveLength(10);
    expect(new Set(FIXTURES.map((f) => f.name)).size).toBe(10);
  });

  it("classifies an anchor with a pointer cursor as a link", () => {
    loadFixture(fixtureByName("priority-order"));
    const styled = enumerateClickables().find((d) => d.selector === "#styled");
    expect(styled?.kind).toBe("link");
  });

  it("takes the pointer cursor from computed style, not inline style only", () => {
    loadFixture(fixtureByName("pointer-from-stylesheet"));
    const hot = document.getElementById("hot1")!;
    expect(hot.getAttribute("style")).toBeNull();
    expect(enumerateClickables().map((d) => d.selector)).toEqual(["#hot1"]);
  });

  it("is deterministic on an unchanged document", () => {
    loadFixture(fixtureByName("static-page"));
    const first = enumerateClickables();
    const second = enumerateClickables();
    expect(second).toEqual(first);
  });

  it("returns descriptors for hidden elements with the visible flag down", () => {
    loadFixture(fixtureByName("hidden-elements"));
    const flags = new Map(enumerateClickables().map((d) => [d.selector, d.visible]));
    expect(flags.get("#shown")).toBe(true);
    expect(flags.get("#gone")).toBe(false);
    expect(flags.get("#ghost")).toBe(false);
    expect(flags.get("#nested")).toBe(false);
  });
});
