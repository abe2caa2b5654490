/** Query-builder state and its translation to the server query language.
 *
 * The emitted string must always be accepted by the server parser: values
 * containing whitespace are double-quoted, values containing a double quote
 * cannot be represented and are rejected up front, and empty rows are
 * dropped rather than serialized.
 */

export interface SlotRow {
  slot: string;
  value: string;
}

export interface QueryBuilderState {
  rows: SlotRow[];
  freeText: string;
}

export function emptyState(): QueryBuilderState {
  return { rows: [], freeText: '' };
}

/** Rows that will actually be serialized (both sides non-blank). */
export function activeRows(state: QueryBuilderState): SlotRow[] {
  return state.rows.filter((r) => r.slot.trim() !== '' && r.value.trim() !== '');
}

export function isSubmittable(state: QueryBuilderState): boolean {
  return activeRows(state).length > 0 || state.freeText.trim() !== '';
}

export class UnrenderableValueError extends Error {}

function renderValue(value: string): string {
  if (value.includes('"')) {
    throw new UnrenderableValueError('values may not contain double quotes');
  }
  return /\s/.test(value) ? `"${value}"` : value;
}

/**
 * Serialize the builder state into the query language. Returns null when
 * there is nothing to search for (submission must stay blocked client-side).
 */
export function buildQueryString(state: QueryBuilderState): string | null {
  const parts: string[] = [];
  for (const row of activeRows(state)) {
    const slot = row.slot.trim();
    const value = row.value.trim();
    parts.push(`${slot}:${renderValue(value)}`);
  }
  const free = state.freeText.trim().replace(/\s+/g, ' ');
  if (free !== '') {
    for (const word of free.split(' ')) {
      // a colon after the first character would re-parse as a slot clause
      if (word.slice(1).includes(':')) {
        throw new UnrenderableValueError(`free-text word looks like a clause: ${word}`);
      }
    }
    parts.push(free);
  }
  return parts.length ? parts.join(' ') : null;
}

/**
 * Deterministic grid of builder-constructible states used to check that
 * every emitted string round-trips through the server parser.
 */
export function generateStateGrid(slotNames: string[]): QueryBuilderState[] {
  const values = [
    'Co3O4',
    'Li2Co3',
    '700 °C',
    '1000 °C',
    'room temperature',
    '24 h',
    'ambient pressure',
    'Sigma-Aldrich',
    'vacuum',
    '2 K/min',
  ];
  const freeTexts = ['', 'arc melting', 'quartz tube furnace', 'quench'];

  const states: QueryBuilderState[] = [];
  for (const freeText of freeTexts.slice(1)) {
    states.push({ rows: [], freeText });
  }
  slotNames.forEach((slot, i) => {
    for (const value of values) {
      states.push({ rows: [{ slot, value }], freeText: '' });
      states.push({ rows: [{ slot, value }], freeText: freeTexts[i % freeTexts.length] });
      const other = slotNames[(i + 1) % slotNames.length];
      const otherValue = values[(values.indexOf(value) + 3) % values.length];
      states.push({
        rows: [
          { slot, value },
          { slot: other, value: otherValue },
        ],
        freeText: '',
      });
    }
  });
  // rows that the builder drops rather than serializes
  states.push({ rows: [{ slot: slotNames[0] ?? 'Device', value: '' }], freeText: 'fallback' });
  return states;
}
