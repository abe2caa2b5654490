/** Page wiring: slot query builder, result list, paragraph detail.
 *
 * Application state lives in the URL (?q=...&offset=...) so searches are
 * shareable; at most one search request is in flight, newer submissions
 * abort older ones.
 */

import { ApiError, MatkbClient, SearchResponse, SlotInfo } from './api.js';
import { colorFor } from './colors.js';
import { segmentText, Span } from './highlight.js';
import { buildQueryString, isSubmittable, QueryBuilderState, SlotRow } from './query.js';

const PAGE_SIZE = 10;

const state: QueryBuilderState = { rows: [], freeText: '' };
let client = new MatkbClient();
let slots: SlotInfo[] = [];
let inflight: AbortController | null = null;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

// --- error banner ----------------------------------------------------------

function showError(message: string, retry?: () => void) {
  const banner = $('error-banner');
  banner.replaceChildren(
    el('span', {}, message),
    ...(retry ? [el('button', { class: 'retry' }, 'Retry')] : []),
  );
  if (retry) banner.querySelector('button')!.addEventListener('click', retry);
  banner.hidden = false;
}

function clearError() {
  $('error-banner').hidden = true;
}

// --- query builder ----------------------------------------------------------

function addRow(row: SlotRow = { slot: '', value: '' }) {
  state.rows.push(row);
  renderBuilder();
}

function renderBuilder() {
  const holder = $('slot-rows');
  holder.replaceChildren();
  state.rows.forEach((row, i) => {
    const select = el('select') as HTMLSelectElement;
    select.append(el('option', { value: '' }, 'choose slot'));
    for (const s of slots) {
      const opt = el('option', { value: s.name }, `${s.name} (${s.unique_values})`);
      select.append(opt);
    }
    select.value = row.slot;
    select.addEventListener('change', () => {
      row.slot = select.value;
      renderBuilder();
    });

    const listId = `values-${i}`;
    const input = el('input', {
      list: listId,
      placeholder: 'value',
      value: row.value,
    }) as HTMLInputElement;
    input.addEventListener('input', () => (row.value = input.value));
    const datalist = el('datalist', { id: listId });
    const info = slots.find((s) => s.name === row.slot);
    for (const tv of info?.top_values ?? []) {
      datalist.append(el('option', { value: tv.value }, `${tv.count}`));
    }

    const remove = el('button', { type: 'button', class: 'remove' }, '×');
    remove.addEventListener('click', () => {
      state.rows.splice(i, 1);
      renderBuilder();
    });

    holder.append(el('div', { class: 'slot-row' }, select, input, datalist, remove));
  });
  ($('submit') as HTMLButtonElement & { disabled: boolean }).toggleAttribute(
    'disabled',
    !isSubmittable(state),
  );
}

function syncSubmittable() {
  ($('submit') as HTMLButtonElement).toggleAttribute('disabled', !isSubmittable(state));
}

// --- search ------------------------------------------------------------------

function runSearch(q: string, offset: number, push = true) {
  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;
  clearError();
  $('results').replaceChildren(el('p', { class: 'muted' }, 'Searching…'));

  client
    .search(q, PAGE_SIZE, offset, controller.signal)
    .then((resp) => {
      if (controller.signal.aborted) return;
      if (push) {
        const params = new URLSearchParams(location.search);
        params.set('q', q);
        params.set('offset', String(offset));
        history.pushState(null, '', `?${params}`);
      }
      renderResults(q, offset, resp);
    })
    .catch((err) => {
      if (controller.signal.aborted) return;
      if (err instanceof ApiError) {
        const detail =
          err.body.column !== undefined ? `${err.body.message}` : err.body.message;
        showError(`Search failed: ${detail}`);
      } else {
        showError('API unreachable.', () => runSearch(q, offset, push));
      }
    });
}

function renderResults(q: string, offset: number, resp: SearchResponse) {
  const box = $('results');
  box.replaceChildren();
  box.append(el('p', { class: 'muted' }, `${resp.total} matching paragraph(s)`));

  if (resp.results.length === 0) {
    box.append(el('p', {}, 'No results. Adjust the slot values or free text and retry.'));
    return;
  }

  for (const r of resp.results) {
    const snippet = el('p', { class: 'snippet' });
    for (const seg of segmentText(r.snippet, r.highlights as Span[])) {
      if (seg.category === null) {
        snippet.append(seg.text);
      } else {
        snippet.append(
          el(
            'mark',
            { style: `background:${colorFor(seg.category)}`, title: seg.category },
            seg.text,
          ),
        );
      }
    }
    const link = el('a', { href: '#', class: 'pid' }, r.paragraph_id);
    link.addEventListener('click', (ev) => {
      ev.preventDefault();
      openDetail(r.paragraph_id);
    });
    box.append(
      el(
        'article',
        { class: 'result' },
        el('header', {}, link, el('span', { class: 'muted' }, ` · ${r.article_id}`)),
        snippet,
      ),
    );
  }

  const nav = el('nav', { class: 'pager' });
  if (offset > 0) {
    const prev = el('button', {}, '← Previous');
    prev.addEventListener('click', () => runSearch(q, Math.max(0, offset - PAGE_SIZE)));
    nav.append(prev);
  }
  if (offset + PAGE_SIZE < resp.total) {
    const next = el('button', {}, 'Next →');
    next.addEventListener('click', () => runSearch(q, offset + PAGE_SIZE));
    nav.append(next);
  }
  box.append(nav);
}

// --- paragraph detail ---------------------------------------------------------

function openDetail(paragraphId: string) {
  client
    .getParagraph(paragraphId)
    .then((detail) => {
      const box = $('detail');
      box.replaceChildren();
      const meta = detail.article;
      box.append(
        el('h2', {}, detail.paragraph.paragraph_id),
        el(
          'p',
          { class: 'muted' },
          [meta.title, meta.venue, meta.year ? String(meta.year) : '']
            .filter(Boolean)
            .join(' · ') || meta.article_id,
        ),
      );
      const body = el('p', { class: 'snippet' });
      const spans = detail.mentions.map((m) => ({
        start: m.start,
        end: m.end,
        category: m.category,
      }));
      for (const seg of segmentText(detail.paragraph.text, spans)) {
        if (seg.category === null) body.append(seg.text);
        else
          body.append(
            el(
              'mark',
              { style: `background:${colorFor(seg.category)}`, title: seg.category },
              seg.text,
            ),
          );
      }
      box.append(body);
      const dialog = box as HTMLDialogElement;
      if (typeof dialog.showModal === 'function') dialog.showModal();
      else dialog.hidden = false;
    })
    .catch((err) => showError(`Could not load paragraph: ${err.message}`));
}

// --- legend -------------------------------------------------------------------

function renderLegend() {
  const legend = $('legend');
  legend.replaceChildren();
  for (const s of slots) {
    legend.append(
      el('span', { class: 'chip', style: `background:${colorFor(s.name)}` }, s.name),
    );
  }
}

// --- boot ----------------------------------------------------------------------

function bootstrap() {
  const apiBase = new URLSearchParams(location.search).get('api') ?? '';
  client = new MatkbClient(apiBase);
  $('add-row').addEventListener('click', () => addRow());
  const freeText = $('free-text') as HTMLInputElement;
  freeText.addEventListener('input', () => {
    state.freeText = freeText.value;
    syncSubmittable();
  });
  $('search-form').addEventListener('submit', (ev) => {
    ev.preventDefault();
    if (!isSubmittable(state)) return;
    let q: string | null;
    try {
      q = buildQueryString(state);
    } catch (err) {
      showError(String(err));
      return;
    }
    if (q) runSearch(q, 0);
  });

  client
    .getSlots()
    .then((loaded) => {
      slots = loaded;
      renderLegend();
      addRow();
      const params = new URLSearchParams(location.search);
      const q = params.get('q');
      if (q) {
        freeText.value = '';
        runSearch(q, Number(params.get('offset') ?? '0'), false);
      }
    })
    .catch(() => showError('API unreachable; is `matkb serve` running?', bootstrap));
}

if (typeof document !== 'undefined' && document.getElementById('search-form')) {
  bootstrap();
}
