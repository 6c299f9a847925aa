/** Display formatting for process configurations. Numbers are shown in
 * natural units; the copyable record string always comes verbatim from the
 * service so it round-trips through the CLI unchanged. */

import type { ConfigBody } from './types.js';

export interface CardLine {
  label: string;
  value: string;
}

function trim(value: number): string {
  // 412.50000000000006 -> "412.5", 13 -> "13"
  return Number(value.toPrecision(10)).toString();
}

export function suggestionCardLines(config: ConfigBody): CardLine[] {
  return [
    { label: 'Pre-processing', value: config.v1 >= 0.5 ? 'Yes' : 'No' },
    { label: 'Power', value: `${trim(config.v2)} W` },
    { label: 'Torch speed', value: `${trim(config.v3)} mm/s` },
    { label: 'Torch distance', value: `${trim(config.v4)} cm` },
    { label: 'Passes', value: `${trim(config.v5)}` },
    { label: 'Glue delay', value: `${trim(config.v6)} min` },
  ];
}

export function formatPf(pf: number): string {
  return `${Math.round(pf * 100)}%`;
}

export function formatHv(hv: number): string {
  return hv.toFixed(3);
}
