import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import {
  activeRows,
  buildQueryString,
  emptyState,
  generateStateGrid,
  isSubmittable,
  UnrenderableValueError,
} from '../src/query.js';

describe('buildQueryString', () => {
  it('emits slot:value for a single row', () => {
    const q = buildQueryString({ rows: [{ slot: 'Material-recipe', value: 'Co3O4' }], freeText: '' });
    expect(q).toBe('Material-recipe:Co3O4');
  });

  it('quotes values containing whitespace', () => {
    const q = buildQueryString({
      rows: [{ slot: 'Property-temperature', value: '1000 °C' }],
      freeText: '',
    });
    expect(q).toBe('Property-temperature:"1000 °C"');
  });

  it('joins multiple rows and free text with spaces', () => {
    const q = buildQueryString({
      rows: [
        { slot: 'Property-temperature', value: '1000 °C' },
        { slot: 'Material-recipe', value: 'Li2Co3' },
      ],
      freeText: ' arc  melting ',
    });
    expect(q).toBe('Property-temperature:"1000 °C" Material-recipe:Li2Co3 arc melting');
  });

  it('drops rows with a blank slot or value', () => {
    const q = buildQueryString({
      rows: [
        { slot: 'Device', value: '' },
        { slot: '', value: 'orphan' },
        { slot: 'Device', value: 'furnace' },
      ],
      freeText: '',
    });
    expect(q).toBe('Device:furnace');
  });

  it('returns null for an empty state (submission stays blocked)', () => {
    expect(buildQueryString(emptyState())).toBeNull();
    expect(isSubmittable(emptyState())).toBe(false);
    expect(isSubmittable({ rows: [{ slot: 'Device', value: ' ' }], freeText: '' })).toBe(false);
  });

  it('rejects values containing double quotes', () => {
    expect(() =>
      buildQueryString({ rows: [{ slot: 'Device', value: 'a"b' }], freeText: '' }),
    ).toThrow(UnrenderableValueError);
  });

  it('rejects free-text words that would parse as clauses', () => {
    expect(() => buildQueryString({ rows: [], freeText: 'oops:clause' })).toThrow(
      UnrenderableValueError,
    );
  });
});

describe('generateStateGrid', () => {
  const slotNames = ['Material-recipe', 'Property-temperature', 'Device'];

  it('yields states that all serialize or are null-empty', () => {
    const grid = generateStateGrid(slotNames);
    expect(grid.length).toBeGreaterThan(30);
    for (const state of grid) {
      const q = buildQueryString(state);
      if (q === null) continue;
      expect(q.trim()).toBe(q);
      expect(q.length).toBeGreaterThan(0);
      // balanced quotes: serialized output must re-tokenize cleanly
      expect((q.match(/"/g) ?? []).length % 2).toBe(0);
    }
  });

  it('only serializes active rows', () => {
    for (const state of generateStateGrid(slotNames)) {
      const q = buildQueryString(state);
      const clauses = activeRows(state).length;
      if (q !== null && clauses > 0) {
        expect((q.match(/:/g) ?? []).length).toBeGreaterThanOrEqual(clauses);
      }
    }
  });

  it('matches the committed grid fixture (run npm run gen:grid after edits)', () => {
    const allSlots = [
      'Descriptor', 'Material-target', 'Material-intermedium', 'Operation',
      'Device', 'Brand', 'Property-time', 'Value', 'Property-pressure',
      'Material-others', 'Material-recipe', 'Property-temperature', 'Property-rate',
    ];
    const regenerated = generateStateGrid(allSlots)
      .map((s) => buildQueryString(s))
      .filter((q): q is string => q !== null);
    const here = dirname(fileURLToPath(import.meta.url));
    const committed = JSON.parse(
      readFileSync(join(here, 'fixtures', 'query_grid.json'), 'utf-8'),
    );
    expect(committed.queries).toEqual(regenerated);
  });
});
