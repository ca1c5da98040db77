/**
 * Render model for finished rankings: every result kind becomes rows of
 * stacked layer chips, best layer first. Fuzzy results place a chip on
 * each layer its interval covers and badge it with the full interval.
 */

import type { DecisionDoc, TraceDoc } from "./types.js";

export interface LayerChip {
  id: number;
  name: string;
  /** Interval badge text for fuzzy membership, null for crisp chips. */
  badge: string | null;
}

export interface LayerRow {
  layer: number;
  chips: LayerChip[];
}

export function rankingRows(trace: TraceDoc, data: DecisionDoc | null): LayerRow[] {
  const nameOf = (id: number): string => {
    const alt = data?.alternatives.find((a) => a.id === id);
    return alt?.name || `A${id}`;
  };
  const result = trace.result;

  if (result.kind === "linear") {
    return result.sequence.map((id, i) => ({
      layer: i + 1,
      chips: [{ id, name: nameOf(id), badge: null }],
    }));
  }

  if (result.kind === "layered") {
    return result.layers.map((members, i) => ({
      layer: i + 1,
      chips: members.map((id) => ({ id, name: nameOf(id), badge: null })),
    }));
  }

  // Fuzzy: intervals run parallel to the alternatives list.
  const ids = data
    ? data.alternatives.map((alt) => alt.id)
    : result.intervals.map((_, i) => i + 1);
  const rows: LayerRow[] = [];
  for (let layer = 1; layer <= result.m; layer += 1) {
    const chips: LayerChip[] = [];
    result.intervals.forEach(([lo, hi], index) => {
      if (lo <= layer && layer <= hi) {
        chips.push({
          id: ids[index],
          name: nameOf(ids[index]),
          badge: lo === hi ? null : `${lo}–${hi}`,
        });
      }
    });
    rows.push({ layer, chips });
  }
  return rows;
}
