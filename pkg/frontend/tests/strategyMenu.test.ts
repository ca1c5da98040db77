import { describe, expect, it } from "vitest";

import { StrategyMenu } from "../src/strategyMenu.js";

describe("stage menu typing", () => {
  it("disables order division until an ordering stage is chosen", () => {
    const menu = new StrategyMenu();
    const layering = menu.menu().layering;
    const u3 = layering.find((entry) => entry.code === "U3")!;
    expect(u3.disabled).toBe(true);
    expect(u3.reason).toBe("U3 divides a linear order and needs an ordering stage");
    expect(() => menu.select("layering", "U3")).toThrow(/divides a linear order/);
  });

  it("disables relation consumers while the relation stage is absent", () => {
    const menu = new StrategyMenu();
    const entries = menu.menu();
    expect(entries.ordering.find((e) => e.code === "T1")!.disabled).toBe(true);
    expect(entries.layering.find((e) => e.code === "U1")!.disabled).toBe(true);
    menu.select("relation", "H2");
    expect(menu.menu().ordering.find((e) => e.code === "T1")!.disabled).toBe(false);
    expect(menu.menu().layering.find((e) => e.code === "U1")!.disabled).toBe(false);
  });

  it("keeps the layering stage mandatory for a layered target", () => {
    const menu = new StrategyMenu();
    const u0 = menu.menu().layering.find((e) => e.code === "U0")!;
    expect(u0.disabled).toBe(true);
    expect(u0.reason).toBe("layered target needs a layering stage in every branch");
  });

  it("emits the clicked path as a strategy document", () => {
    const menu = new StrategyMenu();
    menu.select("relation", "H2");
    menu.select("ordering", "T1");
    menu.select("layering", "U3");
    menu.select("aggregation", "X0");
    expect(menu.document()).toEqual({
      branches: [{ relation: "H2", ordering: "T1", layering: "U3" }],
      aggregator: "X0",
      target: "layered",
    });
  });

  it("cannot drop the relation stage out from under its consumers", () => {
    const menu = new StrategyMenu();
    menu.select("relation", "H1");
    menu.select("ordering", "T1");
    const h0 = menu.menu().relation.find((e) => e.code === "H0")!;
    expect(h0.disabled).toBe(true);
    expect(h0.reason).toBe("T1 sums preference rows and needs a relation stage");
  });

  it("carries stage parameters into the document and drops them on reselect", () => {
    const menu = new StrategyMenu();
    menu.select("relation", "H2");
    menu.select("ordering", "T2");
    menu.select("layering", "U3");
    menu.setParams("layering", { sizes: [1, 1, 2] });
    expect(menu.document().branches[0].layering).toEqual({
      technique: "U3",
      params: { sizes: [1, 1, 2] },
    });
    menu.select("layering", "U2");
    expect(menu.document().branches[0].layering).toBe("U2");
  });

  it("reports the whole-selection issues for an unfinished menu", () => {
    const menu = new StrategyMenu();
    expect(menu.issues()).toEqual([
      "produces no ranking (ordering and layering both absent)",
      "layered target needs a layering stage in every branch",
    ]);
  });
});

describe("linear target", () => {
  it("swaps the constraint set", () => {
    const menu = new StrategyMenu();
    menu.setTarget("linear");
    const entries = menu.menu();
    expect(entries.ordering.find((e) => e.code === "T0")!.disabled).toBe(true);
    expect(entries.layering.find((e) => e.code === "U2")!.reason).toBe(
      "linear target must leave the layering stage absent",
    );
    expect(entries.aggregation.find((e) => e.code === "X1")!.reason).toBe(
      "linear target does not aggregate",
    );
    menu.select("relation", "H2");
    menu.select("ordering", "T1");
    expect(menu.document()).toEqual({
      branches: [{ relation: "H2", ordering: "T1", layering: "U0" }],
      aggregator: "X0",
      target: "linear",
    });
  });
});

describe("presets", () => {
  it("E fills all four stages with the basic chain", () => {
    const menu = new StrategyMenu();
    menu.applyPreset("E");
    expect(menu.document()).toEqual({
      branches: [{ relation: "H1", ordering: "T1", layering: "U1" }],
      aggregator: "X0",
      target: "layered",
    });
    expect(menu.activePreset).toBe("E");
    expect(menu.requiredOpen).toEqual([]);
  });

  it("W1 fixes the front of the chain and leaves layering to the expert", () => {
    const menu = new StrategyMenu();
    menu.applyPreset("W1");
    expect(menu.chosen("relation")).toBe("H0");
    expect(menu.chosen("ordering")).toBe("T0");
    expect(menu.requiredOpen).toEqual(["layering"]);
    // U1 needs a relation, which W1 pins to absent.
    expect(menu.menu().layering.find((e) => e.code === "U1")!.disabled).toBe(true);
    menu.select("layering", "U5");
    expect(menu.document().branches[0]).toEqual({
      relation: "H0",
      ordering: "T0",
      layering: "U5",
    });
  });

  it("W3 pins order division and asks for relation and ordering", () => {
    const menu = new StrategyMenu();
    menu.applyPreset("W3");
    expect(menu.chosen("layering")).toBe("U3");
    expect(menu.requiredOpen).toEqual(["relation", "ordering"]);
    menu.select("ordering", "T2");
    expect(menu.requiredOpen).toEqual(["relation"]);
    menu.select("relation", "H3");
    expect(menu.requiredOpen).toEqual([]);
  });

  it("direct presets arrive complete", () => {
    const menu = new StrategyMenu();
    menu.applyPreset("D1");
    expect(menu.document().branches[0].layering).toBe("U4");
    expect(menu.issues()).toEqual([]);
    menu.applyPreset("D2");
    expect(menu.document().branches[0].layering).toBe("U5");
  });
});
