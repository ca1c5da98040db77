/**
 * Wire types for the session service. These mirror the JSON documents
 * the server produces and consumes; the console never extends them.
 */

export interface AlternativeDoc {
  id: number;
  name?: string;
}

export interface CriterionDoc {
  id: number;
  name?: string;
  scale: [number, number];
  weight?: string | number;
  higher_is_better?: boolean;
}

export interface DecisionDoc {
  alternatives: AlternativeDoc[];
  criteria: CriterionDoc[];
  estimates: number[][];
}

export type StageCode = string;

export interface StageChoiceDoc {
  technique: StageCode;
  params?: Record<string, unknown>;
}

export interface BranchDoc {
  relation: StageCode | StageChoiceDoc;
  ordering: StageCode | StageChoiceDoc;
  layering: StageCode | StageChoiceDoc;
}

export interface StrategyDoc {
  branches: BranchDoc[];
  aggregator: StageCode | StageChoiceDoc;
  target: "linear" | "layered" | "fuzzy";
}

export interface SessionView {
  id: string;
  revision: number;
  has_data: boolean;
  has_strategy: boolean;
  status: "idle" | "suspended" | "complete";
  pending: PendingRequest | null;
}

export interface ComparisonPending {
  kind: "comparison";
  branch: number;
  a: number;
  b: number;
}

export interface AssignmentPending {
  kind: "assignment";
  branch: number;
  alternative: number;
  layers: number;
}

export type PendingRequest = ComparisonPending | AssignmentPending;

export type Verdict = "a_better" | "b_better" | "equal" | "incomparable";

export type AnswerBody = { verdict: Verdict } | { layer: number };

export interface BranchTrace {
  relation?: { n: number; edges: [number, number][] };
  contradictions?: number[][];
  linear?: number[];
  preliminary?: number[][];
}

export interface TraceDoc {
  target: "linear" | "layered" | "fuzzy";
  result:
    | { kind: "linear"; sequence: number[] }
    | { kind: "layered"; layers: number[][] }
    | { kind: "fuzzy"; m: number; intervals: [number, number][] };
  branches: BranchTrace[];
}

export type RunResponse =
  | { status: "suspended"; revision: number; request: PendingRequest }
  | { status: "complete"; revision: number; result: TraceDoc };

export interface ArtifactsResponse {
  revision: number;
  trace: TraceDoc | null;
}

export interface RequestResponse {
  revision: number;
  request: PendingRequest | null;
}

export interface CompositeRow {
  selection: string[];
  label: string;
  feasible: boolean;
  pareto: boolean;
  w?: number;
  e?: number[];
}

export interface SynthesisDoc {
  variant: number;
  composites: CompositeRow[];
  pareto: string[];
}
