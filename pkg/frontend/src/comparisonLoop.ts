/**
 * Drives the expert loop: run the session, surface the pending prompt,
 * post each verdict or placement, and repeat until the engine resumes
 * and produces a ranking. All artifacts come from the server; a 409 on
 * answer means someone advanced the session elsewhere, so the loop
 * reloads server state instead of guessing.
 */

import { ApiError, ConsoleApi } from "./api.js";
import { RevisionGate } from "./revision.js";
import type {
  AnswerBody,
  DecisionDoc,
  PendingRequest,
  TraceDoc,
} from "./types.js";

export type LoopPhase = "idle" | "awaiting" | "complete";

export interface LoopState {
  phase: LoopPhase;
  prompt: PendingRequest | null;
  trace: TraceDoc | null;
}

export interface PromptSide {
  id: number;
  name: string;
  scores: number[];
}

export interface PromptCard {
  kind: "comparison" | "assignment";
  branch: number;
  criteria: string[];
  a: PromptSide;
  b: PromptSide | null;
  layers: number | null;
}

/** The pending request joined with the loaded data document. */
export function promptCard(data: DecisionDoc, request: PendingRequest): PromptCard {
  const side = (id: number): PromptSide => {
    const index = data.alternatives.findIndex((alt) => alt.id === id);
    const alt = data.alternatives[index];
    return {
      id,
      name: alt?.name || `A${id}`,
      scores: index >= 0 ? data.estimates[index] : [],
    };
  };
  const criteria = data.criteria.map((c) => c.name || `K${c.id}`);
  if (request.kind === "comparison") {
    return {
      kind: "comparison",
      branch: request.branch,
      criteria,
      a: side(request.a),
      b: side(request.b),
      layers: null,
    };
  }
  return {
    kind: "assignment",
    branch: request.branch,
    criteria,
    a: side(request.alternative),
    b: null,
    layers: request.layers,
  };
}

export class ComparisonLoop {
  private state: LoopState = { phase: "idle", prompt: null, trace: null };

  constructor(
    private api: ConsoleApi,
    private sessionId: string,
    private gate: RevisionGate,
  ) {}

  get current(): LoopState {
    return this.state;
  }

  /** Kick the engine; lands on either a prompt or a finished trace. */
  async start(): Promise<LoopState> {
    const response = await this.api.run(this.sessionId);
    if (!this.gate.admit(response.revision)) return this.state;
    if (response.status === "suspended") {
      this.state = { phase: "awaiting", prompt: response.request, trace: null };
    } else {
      this.state = { phase: "complete", prompt: null, trace: response.result };
    }
    return this.state;
  }

  /**
   * Post one answer and advance. On a revision conflict the session
   * moved under us: re-fetch its state and pending prompt rather than
   * keep replaying a stale view.
   */
  async answer(body: AnswerBody): Promise<LoopState> {
    try {
      const view = await this.api.answer(this.sessionId, body);
      this.gate.admit(view.revision);
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        return this.reload();
      }
      throw error;
    }
    return this.start();
  }

  /** Resynchronize with the server after a conflict or a fresh page load. */
  async reload(): Promise<LoopState> {
    const view = await this.api.getSession(this.sessionId);
    this.gate.admit(view.revision);
    const pending = await this.api.pendingRequest(this.sessionId);
    if (this.gate.admit(pending.revision) && pending.request !== null) {
      this.state = { phase: "awaiting", prompt: pending.request, trace: null };
      return this.state;
    }
    const artifacts = await this.api.artifacts(this.sessionId);
    if (this.gate.admit(artifacts.revision) && artifacts.trace !== null) {
      this.state = { phase: "complete", prompt: null, trace: artifacts.trace };
    } else {
      this.state = { phase: "idle", prompt: null, trace: null };
    }
    return this.state;
  }
}
