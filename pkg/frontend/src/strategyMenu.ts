/**
 * Model behind the staged strategy menu. The page renders four columns
 * of technique buttons (relation, ordering, layering, aggregation) and
 * this class decides which buttons are live, mirroring the typing rules
 * the server enforces so invalid paths are disabled before they are
 * ever sent. The server remains the authority: whatever it rejects is
 * surfaced inline, this model only prevents the obvious dead ends.
 */

import type { BranchDoc, StageCode, StrategyDoc } from "./types.js";

export type Stage = "relation" | "ordering" | "layering" | "aggregation";

export type ComposerTarget = "linear" | "layered";

export const STAGES: Stage[] = ["relation", "ordering", "layering", "aggregation"];

export const STAGE_TECHNIQUES: Record<Stage, StageCode[]> = {
  relation: ["H0", "H1", "H2", "H3"],
  ordering: ["T0", "T1", "T2"],
  layering: ["U0", "U1", "U2", "U3", "U4", "U5"],
  aggregation: ["X0", "X1", "X2"],
};

export const TECHNIQUE_CAPTIONS: Record<StageCode, string> = {
  H0: "no relation",
  H1: "expert pairwise judgments",
  H2: "dominance by estimates",
  H3: "outranking with thresholds",
  T0: "no ordering",
  T1: "preference row sums",
  T2: "additive utility",
  U0: "no layering",
  U1: "peel maximal elements",
  U2: "peel efficiency frontiers",
  U3: "divide a linear order",
  U4: "direct expert placement",
  U5: "rule table placement",
  X0: "single branch",
  X1: "election over branches",
  X2: "capacity reassignment",
};

interface MenuEntry {
  code: StageCode;
  caption: string;
  selected: boolean;
  disabled: boolean;
  reason: string | null;
}

export interface PresetShape {
  fixed: Partial<Record<Stage, StageCode>>;
  required: Stage[];
}

/** Framework presets; fixed choices are stamped in, required stages stay open. */
export const PRESETS: Record<string, PresetShape> = {
  E: { fixed: {}, required: [] },
  W1: { fixed: { relation: "H0", ordering: "T0" }, required: ["layering"] },
  W2: { fixed: { ordering: "T0" }, required: ["relation", "layering"] },
  W3: { fixed: { layering: "U3", aggregation: "X0" }, required: ["relation", "ordering"] },
  W4: { fixed: { relation: "H0" }, required: ["ordering", "layering"] },
  W5: { fixed: { relation: "H0" }, required: ["ordering", "layering"] },
  D1: {
    fixed: { relation: "H0", ordering: "T0", layering: "U4", aggregation: "X0" },
    required: [],
  },
  D2: {
    fixed: { relation: "H0", ordering: "T0", layering: "U5", aggregation: "X0" },
    required: [],
  },
};

// The open preset fills the whole chain rather than leaving it blank.
const BASIC_CHAIN: Record<Stage, StageCode> = {
  relation: "H1",
  ordering: "T1",
  layering: "U1",
  aggregation: "X0",
};

const ABSENT: Record<Stage, StageCode> = {
  relation: "H0",
  ordering: "T0",
  layering: "U0",
  aggregation: "X0",
};

interface TypingIssue {
  stages: Stage[];
  message: string;
}

/** Single-branch typing rules, worded exactly as the server reports them. */
function typingIssues(
  selection: Record<Stage, StageCode>,
  target: ComposerTarget,
): TypingIssue[] {
  const { relation: h, ordering: t, layering: u, aggregation: x } = selection;
  const issues: TypingIssue[] = [];
  if (t === "T1" && h === "H0") {
    issues.push({
      stages: ["relation", "ordering"],
      message: "T1 sums preference rows and needs a relation stage",
    });
  }
  if (u === "U1" && h === "H0") {
    issues.push({
      stages: ["relation", "layering"],
      message: "U1 peels maximal elements and needs a relation stage",
    });
  }
  if (u === "U3" && t === "T0") {
    issues.push({
      stages: ["ordering", "layering"],
      message: "U3 divides a linear order and needs an ordering stage",
    });
  }
  if (u === "U0" && t === "T0") {
    issues.push({
      stages: ["ordering", "layering"],
      message: "produces no ranking (ordering and layering both absent)",
    });
  }
  if (target === "layered" && u === "U0") {
    issues.push({
      stages: ["layering"],
      message: "layered target needs a layering stage in every branch",
    });
  }
  if (target === "linear") {
    if (t === "T0") {
      issues.push({ stages: ["ordering"], message: "linear target needs an ordering stage" });
    }
    if (u !== "U0") {
      issues.push({
        stages: ["layering"],
        message: "linear target must leave the layering stage absent",
      });
    }
    if (x !== "X0") {
      issues.push({ stages: ["aggregation"], message: "linear target does not aggregate" });
    }
  }
  return issues;
}

export class StrategyMenu {
  private selection: Record<Stage, StageCode> = { ...ABSENT };
  private params: Partial<Record<Stage, Record<string, unknown>>> = {};
  private target: ComposerTarget = "layered";
  private presetName: string | null = null;
  private openStages: Stage[] = [];

  get currentTarget(): ComposerTarget {
    return this.target;
  }

  get activePreset(): string | null {
    return this.presetName;
  }

  /** Stages a preset left open that still hold their absent code. */
  get requiredOpen(): Stage[] {
    return this.openStages.filter((stage) => this.selection[stage] === ABSENT[stage]);
  }

  chosen(stage: Stage): StageCode {
    return this.selection[stage];
  }

  setTarget(target: ComposerTarget): void {
    this.target = target;
  }

  /** Why picking this code now would break the chain, or null if it is fine. */
  blockReason(stage: Stage, code: StageCode): string | null {
    const hypothetical = { ...this.selection, [stage]: code };
    let best: TypingIssue | null = null;
    for (const issue of typingIssues(hypothetical, this.target)) {
      if (!issue.stages.includes(stage)) continue;
      // Prefer the diagnostic most specific to this stage.
      if (best === null || issue.stages.length < best.stages.length) best = issue;
    }
    return best === null ? null : best.message;
  }

  /** Pick a technique; refuses picks the menu shows as disabled. */
  select(stage: Stage, code: StageCode): void {
    if (!STAGE_TECHNIQUES[stage].includes(code)) {
      throw new Error(`${code} is not a ${stage} technique`);
    }
    const reason = this.blockReason(stage, code);
    if (reason !== null) throw new Error(reason);
    if (this.selection[stage] !== code) delete this.params[stage];
    this.selection[stage] = code;
    // Filling an open stage keeps the preset; editing a pinned one leaves it.
    if (this.presetName !== null) {
      const pinned = PRESETS[this.presetName].fixed[stage];
      if (pinned !== undefined && pinned !== code) {
        this.presetName = null;
        this.openStages = [];
      }
    }
  }

  /** Attach parameters (sizes, rules, thresholds...) to the chosen technique. */
  setParams(stage: Stage, params: Record<string, unknown> | null): void {
    if (params === null || Object.keys(params).length === 0) {
      delete this.params[stage];
    } else {
      this.params[stage] = params;
    }
  }

  /**
   * Stamp a preset onto the menu. Fixed stages take the preset's codes,
   * open stages fall back to absent so the expert fills them in; the E
   * preset instead fills the entire basic chain.
   */
  applyPreset(name: string): void {
    const shape = PRESETS[name];
    if (!shape) throw new Error(`unknown preset ${name}`);
    this.params = {};
    if (name === "E") {
      this.selection = { ...BASIC_CHAIN };
      this.openStages = [];
    } else {
      const next = { ...ABSENT };
      for (const stage of STAGES) {
        const fixedCode = shape.fixed[stage];
        if (fixedCode !== undefined) next[stage] = fixedCode;
      }
      this.selection = next;
      this.openStages = [...shape.required];
    }
    this.target = "layered";
    this.presetName = name;
  }

  /** Everything the stage columns need to render themselves. */
  menu(): Record<Stage, MenuEntry[]> {
    const build = (stage: Stage): MenuEntry[] =>
      STAGE_TECHNIQUES[stage].map((code) => {
        const reason = this.blockReason(stage, code);
        return {
          code,
          caption: TECHNIQUE_CAPTIONS[code],
          selected: this.selection[stage] === code,
          disabled: reason !== null,
          reason,
        };
      });
    return {
      relation: build("relation"),
      ordering: build("ordering"),
      layering: build("layering"),
      aggregation: build("aggregation"),
    };
  }

  /** Typing problems with the current selection as a whole. */
  issues(): string[] {
    return typingIssues(this.selection, this.target).map((issue) => issue.message);
  }

  /** The strategy document this menu state denotes. */
  document(): StrategyDoc {
    const encode = (stage: Stage): BranchDoc["relation"] => {
      const code = this.selection[stage];
      const params = this.params[stage];
      return params === undefined ? code : { technique: code, params };
    };
    return {
      branches: [
        {
          relation: encode("relation"),
          ordering: encode("ordering"),
          layering: encode("layering"),
        },
      ],
      aggregator: encode("aggregation"),
      target: this.target,
    };
  }
}
