/**
 * End-to-end against a live service process: composing a strategy on
 * the menu, answering every prompt through the loop controller, and
 * checking the console sees exactly what a scripted run produces.
 */

import { type ChildProcess, spawn } from "node:child_process";
import { readFileSync } from "node:fs";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, ConsoleApi } from "../src/api.js";
import { ComparisonLoop, promptCard } from "../src/comparisonLoop.js";
import { RevisionGate } from "../src/revision.js";
import { rankingRows } from "../src/rankingView.js";
import { StrategyMenu } from "../src/strategyMenu.js";
import { explorerModel } from "../src/synthesisExplorer.js";
import type { DecisionDoc, StrategyDoc, TraceDoc, Verdict } from "../src/types.js";

const PORT = 8900 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

const MORPHOLOGY = JSON.parse(
  readFileSync(new URL("./fixtures/technique-morphology.json", import.meta.url), "utf8"),
);

const DATA: DecisionDoc = {
  alternatives: [{ id: 1 }, { id: 2 }, { id: 3 }, { id: 4 }],
  criteria: [
    { id: 1, scale: [0, 4] },
    { id: 2, scale: [0, 4] },
  ],
  estimates: [
    [4, 4],
    [3, 3],
    [2, 2],
    [1, 1],
  ],
};

let server: ChildProcess;

beforeAll(async () => {
  server = spawn("rankweave", ["serve", "--host", "127.0.0.1", "--port", String(PORT)], {
    stdio: "ignore",
  });
  for (let attempt = 0; attempt < 60; attempt += 1) {
    try {
      await fetch(`${BASE}/sessions/probe`);
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
  }
  throw new Error(`service did not come up on ${BASE}`);
});

afterAll(() => {
  server.kill();
});

interface LoopOutcome {
  asked: [number, number][];
  trace: TraceDoc;
}

/** Compose on the menu, load everything, answer prompts from a script. */
async function driveLoop(
  api: ConsoleApi,
  script: Map<string, Verdict>,
): Promise<LoopOutcome> {
  const menu = new StrategyMenu();
  menu.applyPreset("E");

  const gate = new RevisionGate();
  const view = await api.createSession();
  gate.admit(view.revision);
  gate.admit((await api.putData(view.id, DATA, gate.revision)).revision);
  gate.admit(
    (await api.putStrategy(view.id, menu.document(), gate.revision)).revision,
  );

  const loop = new ComparisonLoop(api, view.id, gate);
  const asked: [number, number][] = [];
  let state = await loop.start();
  while (state.phase === "awaiting") {
    const prompt = state.prompt!;
    if (prompt.kind !== "comparison") throw new Error("expected comparison prompts");
    asked.push([prompt.a, prompt.b]);
    const card = promptCard(DATA, prompt);
    expect(card.a.scores).toHaveLength(2);
    expect(card.b!.scores).toHaveLength(2);
    const verdict = script.get(`${prompt.a},${prompt.b}`);
    if (!verdict) throw new Error(`no scripted verdict for ${prompt.a},${prompt.b}`);
    state = await loop.answer({ verdict });
  }
  expect(state.phase).toBe("complete");
  return { asked, trace: state.trace! };
}

/** The same strategy with the script baked in, run without any prompts. */
async function scriptedRun(
  api: ConsoleApi,
  script: Map<string, Verdict>,
): Promise<TraceDoc> {
  const judgments = [...script.entries()].map(([pair, verdict]) => {
    const [a, b] = pair.split(",").map(Number);
    return [a, b, verdict];
  });
  const strategy: StrategyDoc = {
    branches: [
      {
        relation: { technique: "H1", params: { judgments } },
        ordering: "T1",
        layering: "U1",
      },
    ],
    aggregator: "X0",
    target: "layered",
  };
  const view = await api.createSession();
  await api.putData(view.id, DATA, view.revision);
  await api.putStrategy(view.id, strategy, view.revision + 1);
  const response = await api.run(view.id);
  if (response.status !== "complete") throw new Error("scripted run suspended");
  return response.result;
}

const ALL_PAIRS: [number, number][] = [
  [1, 2],
  [1, 3],
  [1, 4],
  [2, 3],
  [2, 4],
  [3, 4],
];

describe("comparison loop", () => {
  const api = new ConsoleApi(BASE);

  it("walks all six prompts and matches the scripted service run", async () => {
    const script = new Map<string, Verdict>([
      ["1,2", "b_better"],
      ["1,3", "a_better"],
      ["1,4", "a_better"],
      ["2,3", "a_better"],
      ["2,4", "a_better"],
      ["3,4", "equal"],
    ]);
    const outcome = await driveLoop(api, script);
    expect(outcome.asked).toEqual(ALL_PAIRS);
    expect(outcome.trace).toEqual(await scriptedRun(api, script));
  });

  it("ranks strictly reversed preferences bottom up", async () => {
    const script = new Map<string, Verdict>(
      ALL_PAIRS.map(([a, b]) => [`${a},${b}`, "b_better" as Verdict]),
    );
    const outcome = await driveLoop(api, script);
    const result = outcome.trace.result;
    expect(result.kind).toBe("layered");
    if (result.kind === "layered") {
      expect(result.layers).toEqual([[4], [3], [2], [1]]);
    }
    const rows = rankingRows(outcome.trace, DATA);
    expect(rows.map((r) => r.chips.map((c) => c.name))).toEqual([
      ["A4"],
      ["A3"],
      ["A2"],
      ["A1"],
    ]);
  });

  it("reloads instead of replaying after an out-of-band answer", async () => {
    const menu = new StrategyMenu();
    menu.applyPreset("E");
    const gate = new RevisionGate();
    const view = await api.createSession();
    gate.admit(view.revision);
    await api.putData(view.id, DATA, 0);
    await api.putStrategy(view.id, menu.document(), 1);
    gate.admit(2);

    const loop = new ComparisonLoop(api, view.id, gate);
    let state = await loop.start();
    expect(state.prompt).toMatchObject({ kind: "comparison", a: 1, b: 2 });

    // Another client answers the same prompt first.
    await api.answer(view.id, { verdict: "equal" });
    state = await loop.answer({ verdict: "b_better" });
    expect(state.phase).toBe("idle");

    state = await loop.start();
    expect(state.prompt).toMatchObject({ kind: "comparison", a: 1, b: 3 });
  });

  it("surfaces validation failures inline from the server", async () => {
    const view = await api.createSession();
    await api.putData(view.id, DATA, 0);
    await api.putStrategy(
      view.id,
      {
        branches: [{ relation: "H1", ordering: "T0", layering: "U0" }],
        aggregator: "X0",
        target: "layered",
      },
      1,
    );
    const failure = await api.run(view.id).catch((error) => error);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).status).toBe(422);
    expect((failure as ApiError).detail).toMatch(/produces no ranking|layering stage/);
  });

  it("refuses stale revisions and says where the session is", async () => {
    const view = await api.createSession();
    await api.putData(view.id, DATA, 0);
    const stale = await api.putData(view.id, DATA, 0).catch((error) => error);
    expect(stale).toBeInstanceOf(ApiError);
    expect((stale as ApiError).status).toBe(409);
    expect((stale as ApiError).detail).toContain("stale");
  });
});

describe("synthesis explorer", () => {
  const api = new ConsoleApi(BASE);

  it("highlights exactly the four Pareto composites of the technique morphology", async () => {
    const doc = await api.synthesize(MORPHOLOGY, 2);
    const model = explorerModel(doc);
    expect(model.empty).toBe(false);
    expect(model.points).toHaveLength(8);
    expect([...model.highlighted].sort()).toEqual([
      "H0*T0*U5*X0",
      "H1*T0*U2*X0",
      "H2*T0*U2*X0",
      "H3*T0*U2*X0",
    ]);
    expect(model.ideal).toEqual({ w: 3, e: [4, 0, 0], attained: false });
    expect(model.eLevels[0]).toBe("(4,0,0)");
  });

  it("re-renders a priority morphology when toggled to variant 1", async () => {
    const priorityMorphology = {
      scale: { levels: 3, cardinality: 2 },
      parts: [
        {
          name: "alpha",
          options: [
            { name: "a1", priority: 1 },
            { name: "a2", priority: 2 },
          ],
        },
        { name: "beta", options: [{ name: "b1", priority: 1 }] },
      ],
      compatibility: {
        max_level: 3,
        pairs: [
          ["a1", "b1", 3],
          ["a2", "b1", 2],
        ],
      },
    };
    const model = explorerModel(await api.synthesize(priorityMorphology, 1));
    expect(model.variant).toBe(1);
    expect(model.highlighted).toEqual(["a1*b1"]);
    expect(model.ideal).toEqual({ w: 3, e: [2, 0, 0], attained: true });
  });

  it("keeps server misuse inline instead of guessing a result", async () => {
    // The technique morphology carries no variant-3 floor.
    const doc = await api.synthesize(MORPHOLOGY, 3).catch((error) => error);
    expect(doc).toBeInstanceOf(ApiError);
    expect((doc as ApiError).status).toBe(400);
  });
});
