/** Pure scatter/line geometry for the front plot and the HV progress chart.
 * No objective math happens here: the service supplies every number and
 * this module only maps values to pixel coordinates. */

import type { FrontResponse, HistoryResponse } from './types.js';

export interface ChartPoint {
  x: number;
  y: number;
  kind: 'front' | 'reference';
  title: string;
}

export interface ScatterLayout {
  width: number;
  height: number;
  points: ChartPoint[];
  xLabel: string;
  yLabel: string;
  /** Strength axis is inverted: larger strength is drawn lower. */
  yTicks: { y: number; value: number }[];
  xTicks: { x: number; value: number }[];
}

const PAD = 36;

function niceTicks(lo: number, hi: number, n = 4): number[] {
  if (!(hi > lo)) return [lo];
  const step = (hi - lo) / n;
  return Array.from({ length: n + 1 }, (_, i) => lo + i * step);
}

export function scatterLayout(front: FrontResponse, width = 420, height = 300): ScatterLayout {
  const costs = front.points.map((p) => p.cost_mean).concat([front.reference.cost]);
  const strengths = front.points.map((p) => p.strength_mean).concat([front.reference.strength]);
  const xLo = Math.min(...costs);
  const xHi = Math.max(...costs);
  const yLo = Math.min(...strengths);
  const yHi = Math.max(...strengths);
  const xSpan = xHi > xLo ? xHi - xLo : 1;
  const ySpan = yHi > yLo ? yHi - yLo : 1;

  const toX = (cost: number) => PAD + ((cost - xLo) / xSpan) * (width - 2 * PAD);
  // Inverted y-axis: strength grows downward so that lower-left is better
  // in minimization terms for both objectives.
  const toY = (strength: number) => PAD + ((strength - yLo) / ySpan) * (height - 2 * PAD);

  const points: ChartPoint[] = front.points.map((p) => ({
    x: toX(p.cost_mean),
    y: toY(p.strength_mean),
    kind: 'front',
    title: `cost ${p.cost_mean.toFixed(3)}, strength ${p.strength_mean.toFixed(2)}, pf ${p.pf}`,
  }));
  points.push({
    x: toX(front.reference.cost),
    y: toY(front.reference.strength),
    kind: 'reference',
    title: `reference (cost ${front.reference.cost}, strength ${front.reference.strength})`,
  });

  return {
    width,
    height,
    points,
    xLabel: 'production cost (EUR)',
    yLabel: 'strength (MPa, inverted)',
    xTicks: niceTicks(xLo, xHi).map((v) => ({ x: toX(v), value: Number(v.toFixed(2)) })),
    yTicks: niceTicks(yLo, yHi).map((v) => ({ y: toY(v), value: Number(v.toFixed(1)) })),
  };
}

export interface LineLayout {
  width: number;
  height: number;
  path: string;
  last: number | null;
}

export function hvLineLayout(history: HistoryResponse, width = 420, height = 160): LineLayout {
  const values = history.hv;
  if (values.length === 0) {
    return { width, height, path: '', last: null };
  }
  const lo = Math.min(...values, 0);
  const hi = Math.max(...values);
  const span = hi > lo ? hi - lo : 1;
  const toX = (i: number) =>
    PAD + (values.length === 1 ? 0 : (i / (values.length - 1)) * (width - 2 * PAD));
  const toY = (v: number) => height - PAD - ((v - lo) / span) * (height - 2 * PAD);
  const path = values.map((v, i) => `${toX(i).toFixed(1)},${toY(v).toFixed(1)}`).join(' ');
  return { width, height, path, last: values[values.length - 1] ?? null };
}
