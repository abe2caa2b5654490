/** Split text into plain/highlighted runs from server-provided spans.
 *
 * Offsets count Unicode scalar values (the server indexes Python strings),
 * not UTF-16 code units, so slicing goes through a code-point array. For
 * overlapping spans (possible with imported mentions) the outermost span
 * wins; contained or partially overlapping spans are dropped for display.
 */

export interface Span {
  start: number;
  end: number;
  category: string;
}

export interface Segment {
  text: string;
  category: string | null;
  start: number;
  end: number;
}

/** Keep outermost spans: sort by (start, longest first), drop overlaps. */
export function resolveOverlaps(spans: Span[]): Span[] {
  const ordered = [...spans].sort((a, b) => a.start - b.start || b.end - a.end);
  const kept: Span[] = [];
  for (const span of ordered) {
    const last = kept[kept.length - 1];
    if (!last || span.start >= last.end) kept.push(span);
  }
  return kept;
}

export function segmentText(text: string, spans: Span[]): Segment[] {
  const points = Array.from(text); // one entry per Unicode scalar
  const total = points.length;
  const slice = (a: number, b: number) => points.slice(a, b).join('');

  const segments: Segment[] = [];
  let cursor = 0;
  for (const span of resolveOverlaps(spans)) {
    const start = Math.max(0, Math.min(span.start, total));
    const end = Math.max(start, Math.min(span.end, total));
    if (end <= start) continue;
    if (start > cursor) {
      segments.push({ text: slice(cursor, start), category: null, start: cursor, end: start });
    }
    segments.push({ text: slice(start, end), category: span.category, start, end });
    cursor = end;
  }
  if (cursor < total) {
    segments.push({ text: slice(cursor, total), category: null, start: cursor, end: total });
  }
  return segments;
}
