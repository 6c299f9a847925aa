import { describe, expect, it } from 'vitest';

import { formIsComplete, toOutcomeRows, validateRow } from '../src/validate.js';
import type { RawOutcomeRow } from '../src/validate.js';

function row(overrides: Partial<RawOutcomeRow> = {}): RawOutcomeRow {
  return {
    strength: '21.4',
    cost: '0.85',
    failure_mode: 'cohesive',
    visual_damage: false,
    ...overrides,
  };
}

describe('validateRow', () => {
  it('accepts a complete valid row', () => {
    expect(validateRow(row())).toEqual({});
  });

  it('rejects negative strength', () => {
    expect(validateRow(row({ strength: '-1' })).strength).toMatch(/negative/);
  });

  it('rejects negative cost', () => {
    expect(validateRow(row({ cost: '-0.2' })).cost).toMatch(/negative/);
  });

  it('requires numeric values', () => {
    expect(validateRow(row({ strength: 'abc' })).strength).toBeTruthy();
    expect(validateRow(row({ cost: '' })).cost).toBeTruthy();
  });

  it('requires a known failure mode', () => {
    expect(validateRow(row({ failure_mode: '' })).failure_mode).toBeTruthy();
    expect(validateRow(row({ failure_mode: 'explosion' })).failure_mode).toMatch(
      /adhesion, cohesive, substrate/,
    );
  });

  it('accepts zero strength and zero cost', () => {
    expect(validateRow(row({ strength: '0', cost: '0' }))).toEqual({});
  });
});

describe('formIsComplete', () => {
  it('requires exactly the replication count of valid rows', () => {
    expect(formIsComplete([row(), row()], 2)).toBe(true);
    expect(formIsComplete([row()], 2)).toBe(false);
    expect(formIsComplete([row(), row({ strength: '' })], 2)).toBe(false);
  });
});

describe('toOutcomeRows', () => {
  it('converts raw strings to wire numbers', () => {
    expect(toOutcomeRows([row({ visual_damage: true })])).toEqual([
      { strength: 21.4, cost: 0.85, failure_mode: 'cohesive', visual_damage: true },
    ]);
  });
});
