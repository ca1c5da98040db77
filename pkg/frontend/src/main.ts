/**
 * Page controller. Wires the strategy menu, the expert loop and the
 * synthesis explorer to the DOM. Everything shown here was computed by
 * the server; the controller's own job is wiring, rendering and the
 * stale-revision guard.
 */

import { ApiError, ConsoleApi } from "./api.js";
import { ComparisonLoop, promptCard } from "./comparisonLoop.js";
import { RevisionGate } from "./revision.js";
import { rankingRows } from "./rankingView.js";
import { PRESETS, STAGES, StrategyMenu, type Stage } from "./strategyMenu.js";
import { explorerModel } from "./synthesisExplorer.js";
import type { DecisionDoc, PendingRequest, TraceDoc, Verdict } from "./types.js";

const SAMPLE_DATA: DecisionDoc = {
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

class ConsolePage {
  private api = new ConsoleApi("");
  private gate = new RevisionGate();
  private menu = new StrategyMenu();
  private loop: ComparisonLoop | null = null;
  private sessionId: string | null = null;
  private data: DecisionDoc | null = null;

  private element(id: string): HTMLElement {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element ${id}`);
    return node;
  }

  init(): void {
    (this.element("dataInput") as HTMLTextAreaElement).value = JSON.stringify(
      SAMPLE_DATA,
      null,
      2,
    );
    this.element("newSession").addEventListener("click", () => this.newSession());
    this.element("loadData").addEventListener("click", () => this.loadData());
    this.element("saveStrategy").addEventListener("click", () => this.saveStrategy());
    this.element("runButton").addEventListener("click", () => this.run());
    this.element("synthesizeButton").addEventListener("click", () => this.synthesize());
    (this.element("targetSelect") as HTMLSelectElement).addEventListener("change", (ev) => {
      this.menu.setTarget((ev.target as HTMLSelectElement).value as "linear" | "layered");
      this.renderMenu();
    });
    this.renderPresets();
    this.renderMenu();
  }

  private setError(id: string, message: string | null): void {
    const node = this.element(id);
    node.textContent = message ?? "";
    node.classList.toggle("visible", message !== null);
  }

  private updateSessionBar(status?: string): void {
    this.element("sessionId").textContent = this.sessionId ?? "no session";
    this.element("revisionChip").textContent =
      this.gate.revision >= 0 ? `rev ${this.gate.revision}` : "";
    if (status !== undefined) this.element("statusChip").textContent = status;
  }

  private async newSession(): Promise<void> {
    try {
      const view = await this.api.createSession();
      this.sessionId = view.id;
      this.gate.reset();
      this.gate.admit(view.revision);
      this.loop = new ComparisonLoop(this.api, view.id, this.gate);
      this.element("promptCard").innerHTML = "";
      this.element("resultView").innerHTML = "";
      this.updateSessionBar(view.status);
    } catch (error) {
      this.setError("dataError", describe(error));
    }
  }

  private async loadData(): Promise<void> {
    if (!this.sessionId) {
      this.setError("dataError", "create a session first");
      return;
    }
    try {
      const doc = JSON.parse((this.element("dataInput") as HTMLTextAreaElement).value);
      const view = await this.api.putData(this.sessionId, doc, this.gate.revision);
      this.gate.admit(view.revision);
      this.data = doc;
      this.setError("dataError", null);
      this.updateSessionBar(view.status);
    } catch (error) {
      this.setError("dataError", describe(error));
    }
  }

  private renderPresets(): void {
    const row = this.element("presetRow");
    row.innerHTML = "";
    for (const name of Object.keys(PRESETS)) {
      const button = document.createElement("button");
      button.textContent = name;
      button.addEventListener("click", () => {
        this.menu.applyPreset(name);
        (this.element("targetSelect") as HTMLSelectElement).value = "layered";
        this.renderMenu();
      });
      row.appendChild(button);
    }
  }

  private renderMenu(): void {
    const columns = this.element("stageColumns");
    columns.innerHTML = "";
    const menu = this.menu.menu();
    for (const stage of STAGES) {
      const column = document.createElement("div");
      column.className = "stage-column";
      const heading = document.createElement("h3");
      heading.textContent = stage;
      column.appendChild(heading);
      for (const entry of menu[stage]) {
        const button = document.createElement("button");
        button.textContent = `${entry.code} ${entry.caption}`;
        button.disabled = entry.disabled;
        button.classList.toggle("selected", entry.selected);
        if (entry.reason) button.title = entry.reason;
        button.addEventListener("click", () => {
          this.menu.select(stage as Stage, entry.code);
          this.renderMenu();
        });
        column.appendChild(button);
      }
      columns.appendChild(column);
    }
    const open = this.menu.requiredOpen;
    const issues = this.menu.issues();
    const hints = [
      ...(this.menu.activePreset ? [`preset ${this.menu.activePreset}`] : []),
      ...(open.length > 0 ? [`still open: ${open.join(", ")}`] : []),
      ...issues,
    ];
    this.element("strategyIssues").textContent = hints.join(" / ");
  }

  private async saveStrategy(): Promise<void> {
    if (!this.sessionId) {
      this.setError("strategyError", "create a session first");
      return;
    }
    try {
      const view = await this.api.putStrategy(
        this.sessionId,
        this.menu.document(),
        this.gate.revision,
      );
      this.gate.admit(view.revision);
      this.setError("strategyError", null);
      this.updateSessionBar(view.status);
    } catch (error) {
      this.setError("strategyError", describe(error));
    }
  }

  private async run(): Promise<void> {
    if (!this.loop) {
      this.setError("runError", "create a session first");
      return;
    }
    try {
      const state = await this.loop.start();
      this.setError("runError", null);
      this.updateSessionBar(state.phase);
      if (state.phase === "awaiting" && state.prompt) this.renderPrompt(state.prompt);
      if (state.phase === "complete" && state.trace) this.renderResult(state.trace);
    } catch (error) {
      this.setError("runError", describe(error));
    }
  }

  private async postAnswer(body: { verdict: Verdict } | { layer: number }): Promise<void> {
    if (!this.loop) return;
    try {
      const state = await this.loop.answer(body);
      this.setError("runError", null);
      this.updateSessionBar(state.phase);
      this.element("promptCard").innerHTML = "";
      if (state.phase === "awaiting" && state.prompt) this.renderPrompt(state.prompt);
      if (state.phase === "complete" && state.trace) this.renderResult(state.trace);
    } catch (error) {
      this.setError("runError", describe(error));
    }
  }

  private renderPrompt(request: PendingRequest): void {
    const host = this.element("promptCard");
    host.innerHTML = "";
    if (!this.data) return;
    const card = promptCard(this.data, request);
    const table = document.createElement("table");
    const header = document.createElement("tr");
    header.innerHTML =
      `<th></th>` +
      card.criteria.map((name) => `<th>${name}</th>`).join("");
    table.appendChild(header);
    const sideRow = (side: { name: string; scores: number[] }): HTMLTableRowElement => {
      const row = document.createElement("tr");
      row.innerHTML =
        `<th>${side.name}</th>` + side.scores.map((s) => `<td>${s}</td>`).join("");
      return row;
    };
    table.appendChild(sideRow(card.a));
    if (card.b) table.appendChild(sideRow(card.b));
    host.appendChild(table);

    const actions = document.createElement("div");
    actions.className = "actions";
    if (card.kind === "comparison" && card.b) {
      const choices: [Verdict, string][] = [
        ["a_better", `${card.a.name} better`],
        ["equal", "equal"],
        ["b_better", `${card.b.name} better`],
        ["incomparable", "incomparable"],
      ];
      for (const [verdict, label] of choices) {
        const button = document.createElement("button");
        button.textContent = label;
        button.addEventListener("click", () => this.postAnswer({ verdict }));
        actions.appendChild(button);
      }
    } else if (card.layers !== null) {
      for (let layer = 1; layer <= card.layers; layer += 1) {
        const button = document.createElement("button");
        button.textContent = `layer ${layer}`;
        button.addEventListener("click", () => this.postAnswer({ layer }));
        actions.appendChild(button);
      }
    }
    host.appendChild(actions);
  }

  private renderResult(trace: TraceDoc): void {
    const host = this.element("resultView");
    host.innerHTML = "";
    for (const row of rankingRows(trace, this.data)) {
      const div = document.createElement("div");
      div.className = "layer-row";
      const label = document.createElement("span");
      label.className = "layer-label";
      label.textContent = `${row.layer}`;
      div.appendChild(label);
      for (const chip of row.chips) {
        const span = document.createElement("span");
        span.className = "chip";
        span.textContent = chip.badge ? `${chip.name} [${chip.badge}]` : chip.name;
        div.appendChild(span);
      }
      host.appendChild(div);
    }
  }

  private async synthesize(): Promise<void> {
    try {
      const morphology = JSON.parse(
        (this.element("morphologyInput") as HTMLTextAreaElement).value,
      );
      const variant = Number((this.element("variantSelect") as HTMLSelectElement).value);
      const doc = await this.api.synthesize(morphology, variant);
      this.setError("synthesisError", null);
      this.renderExplorer(doc);
    } catch (error) {
      this.setError("synthesisError", describe(error));
    }
  }

  private renderExplorer(doc: Parameters<typeof explorerModel>[0]): void {
    const host = this.element("synthesisView");
    host.innerHTML = "";
    const model = explorerModel(doc);
    if (model.empty) {
      host.textContent = "no feasible composite under this variant";
      return;
    }

    const width = 420;
    const rowHeight = 36;
    const height = model.eLevels.length * rowHeight + 50;
    const ws = model.points.map((p) => p.w ?? 0);
    const maxW = Math.max(1, ...ws);
    const x = (w: number | null): number => 70 + ((w ?? 0) / maxW) * (width - 120);
    const y = (rank: number): number => 24 + rank * rowHeight;

    const marks: string[] = [];
    model.eLevels.forEach((label, rank) => {
      marks.push(
        `<text x="4" y="${y(rank) + 4}" class="axis">${label}</text>`,
        `<line x1="60" y1="${y(rank)}" x2="${width - 16}" y2="${y(rank)}" class="grid"/>`,
      );
    });
    for (const point of model.points) {
      const cls = point.pareto ? "point pareto" : "point";
      const px = x(point.w);
      const py = y(point.eRank);
      marks.push(
        `<circle cx="${px}" cy="${py}" r="${point.pareto ? 8 : 5}" class="${cls}"><title>${point.label}</title></circle>`,
        `<text x="${px + 10}" y="${py - 8}" class="tag">${point.label}</text>`,
      );
    }
    if (model.ideal && !model.ideal.attained) {
      marks.push(
        `<text x="${x(model.ideal.w)}" y="${y(0) - 10}" class="ideal">ideal</text>`,
        `<circle cx="${x(model.ideal.w)}" cy="${y(0)}" r="6" class="point ideal-point"/>`,
      );
    }
    const axis = `<text x="${width / 2}" y="${height - 8}" class="axis">chain compatibility w</text>`;
    host.innerHTML =
      `<svg viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">` +
      marks.join("") +
      axis +
      `</svg>` +
      `<p>${model.highlighted.length} Pareto composites: ${model.highlighted.join(", ")}</p>`;
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `server: ${error.detail}`;
  if (error instanceof Error) return error.message;
  return String(error);
}

new ConsolePage().init();
