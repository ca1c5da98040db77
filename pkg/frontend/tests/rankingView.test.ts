import { describe, expect, it } from "vitest";

import { rankingRows } from "../src/rankingView.js";
import type { DecisionDoc, TraceDoc } from "../src/types.js";

const DATA: DecisionDoc = {
  alternatives: [
    { id: 1, name: "north" },
    { id: 2 },
    { id: 3, name: "south" },
  ],
  criteria: [{ id: 1, scale: [0, 4] }],
  estimates: [[3], [2], [1]],
};

function trace(result: TraceDoc["result"]): TraceDoc {
  return { target: result.kind, result, branches: [] };
}

describe("rankingRows", () => {
  it("spreads a linear order one chip per row", () => {
    const rows = rankingRows(trace({ kind: "linear", sequence: [3, 1, 2] }), DATA);
    expect(rows.map((r) => r.layer)).toEqual([1, 2, 3]);
    expect(rows.map((r) => r.chips.map((c) => c.name))).toEqual([
      ["south"],
      ["north"],
      ["A2"],
    ]);
  });

  it("mirrors layered partitions best layer first", () => {
    const rows = rankingRows(trace({ kind: "layered", layers: [[1, 3], [2]] }), DATA);
    expect(rows).toEqual([
      {
        layer: 1,
        chips: [
          { id: 1, name: "north", badge: null },
          { id: 3, name: "south", badge: null },
        ],
      },
      { layer: 2, chips: [{ id: 2, name: "A2", badge: null }] },
    ]);
  });

  it("stretches fuzzy chips across their interval with a badge", () => {
    const rows = rankingRows(
      trace({
        kind: "fuzzy",
        m: 3,
        intervals: [
          [1, 1],
          [1, 2],
          [3, 3],
        ],
      }),
      DATA,
    );
    expect(rows[0].chips.map((c) => [c.name, c.badge])).toEqual([
      ["north", null],
      ["A2", "1–2"],
    ]);
    expect(rows[1].chips).toEqual([{ id: 2, name: "A2", badge: "1–2" }]);
    expect(rows[2].chips).toEqual([{ id: 3, name: "south", badge: null }]);
  });

  it("falls back to positional ids without a data document", () => {
    const rows = rankingRows(
      trace({ kind: "fuzzy", m: 2, intervals: [[1, 2], [2, 2]] }),
      null,
    );
    expect(rows[1].chips.map((c) => c.name)).toEqual(["A1", "A2"]);
  });
});
