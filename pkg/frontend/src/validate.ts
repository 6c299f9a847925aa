/** Client-side validation of the outcome entry form. The form submits
 * exactly r complete rows; the client never invents or repairs values. */

import { FAILURE_MODES } from './types.js';
import type { FailureMode, OutcomeRow } from './types.js';

export interface RawOutcomeRow {
  strength: string;
  cost: string;
  failure_mode: string;
  visual_damage: boolean;
}

export interface RowErrors {
  strength?: string;
  cost?: string;
  failure_mode?: string;
}

export function validateRow(row: RawOutcomeRow): RowErrors {
  const errors: RowErrors = {};
  const strength = Number(row.strength);
  if (row.strength.trim() === '' || !Number.isFinite(strength)) {
    errors.strength = 'Strength is required (MPa)';
  } else if (strength < 0) {
    errors.strength = 'Strength cannot be negative';
  }
  const cost = Number(row.cost);
  if (row.cost.trim() === '' || !Number.isFinite(cost)) {
    errors.cost = 'Cost is required (euros)';
  } else if (cost < 0) {
    errors.cost = 'Cost cannot be negative';
  }
  if (!FAILURE_MODES.includes(row.failure_mode as FailureMode)) {
    errors.failure_mode = `Failure mode must be one of ${FAILURE_MODES.join(', ')}`;
  }
  return errors;
}

export function rowIsComplete(row: RawOutcomeRow): boolean {
  return Object.keys(validateRow(row)).length === 0;
}

export function formIsComplete(rows: RawOutcomeRow[], replications: number): boolean {
  return rows.length === replications && rows.every(rowIsComplete);
}

export function toOutcomeRows(rows: RawOutcomeRow[]): OutcomeRow[] {
  return rows.map((row) => ({
    strength: Number(row.strength),
    cost: Number(row.cost),
    failure_mode: row.failure_mode as FailureMode,
    visual_damage: row.visual_damage,
  }));
}
