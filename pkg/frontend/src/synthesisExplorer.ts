/**
 * Model behind the synthesis explorer plot. The server scores and
 * filters the composites; this module only arranges the feasible ones
 * on a (compatibility, estimate) grid, marks the server's Pareto picks
 * for highlighting and names the ideal corner of the observed space.
 */

import type { CompositeRow, SynthesisDoc } from "./types.js";

export interface ExplorerPoint {
  label: string;
  selection: string[];
  w: number | null;
  e: number[] | null;
  /** Row on the plot: 0 is the best estimate level present. */
  eRank: number;
  pareto: boolean;
}

export interface ExplorerModel {
  variant: number;
  empty: boolean;
  points: ExplorerPoint[];
  /** Estimate levels present, best first, as axis labels. */
  eLevels: string[];
  ideal: { w: number | null; e: number[] | null; attained: boolean } | null;
  highlighted: string[];
}

export function countsLabel(e: number[]): string {
  return `(${e.join(",")})`;
}

/** Display order for counts vectors: larger cumulative prefixes first. */
export function compareCounts(a: number[], b: number[]): number {
  let ca = 0;
  let cb = 0;
  for (let i = 0; i < Math.max(a.length, b.length); i += 1) {
    ca += a[i] ?? 0;
    cb += b[i] ?? 0;
    if (ca !== cb) return cb - ca;
  }
  return 0;
}

export function explorerModel(doc: SynthesisDoc): ExplorerModel {
  const feasible: CompositeRow[] = doc.composites.filter((row) => row.feasible);
  if (feasible.length === 0) {
    return {
      variant: doc.variant,
      empty: true,
      points: [],
      eLevels: [],
      ideal: null,
      highlighted: [],
    };
  }

  const levels: number[][] = [];
  for (const row of feasible) {
    if (row.e && !levels.some((e) => compareCounts(e, row.e!) === 0)) {
      levels.push(row.e);
    }
  }
  levels.sort(compareCounts);
  const rankOf = (e: number[] | undefined): number =>
    e ? levels.findIndex((level) => compareCounts(level, e) === 0) : 0;

  const points: ExplorerPoint[] = feasible.map((row) => ({
    label: row.label,
    selection: row.selection,
    w: row.w ?? null,
    e: row.e ?? null,
    eRank: rankOf(row.e),
    pareto: row.pareto,
  }));

  const ws = points.map((p) => p.w).filter((w): w is number => w !== null);
  const bestW = ws.length > 0 ? Math.max(...ws) : null;
  const bestE = levels.length > 0 ? levels[0] : null;
  const attained = points.some(
    (p) =>
      (bestW === null || p.w === bestW) &&
      (bestE === null || (p.e !== null && compareCounts(p.e, bestE) === 0)),
  );

  return {
    variant: doc.variant,
    empty: false,
    points,
    eLevels: levels.map(countsLabel),
    ideal: { w: bestW, e: bestE, attained },
    highlighted: points.filter((p) => p.pareto).map((p) => p.label),
  };
}
