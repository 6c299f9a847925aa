/** Campaign operator UI: shows the next configuration to run, collects the
 * replication outcomes, and tracks the Pareto front and hypervolume as the
 * campaign progresses.
 *
 * The page is stateless beyond the campaign id kept in the URL hash; every
 * render is reconstructed from service GETs, and a 2-second poll keeps
 * concurrent tabs loosely in sync.
 */

import {
  ApiError,
  createCampaign,
  getCampaign,
  getFront,
  getHistory,
  getSuggestion,
  postObservations,
} from './api.js';
import { hvLineLayout, scatterLayout } from './charts.js';
import { formatHv, formatPf, suggestionCardLines } from './format.js';
import type { CampaignView, ConfigBody, FrontResponse, HistoryResponse } from './types.js';
import { FAILURE_MODES } from './types.js';
import { formIsComplete, toOutcomeRows, validateRow } from './validate.js';
import type { RawOutcomeRow } from './validate.js';

const POLL_MS = 2000;

interface UiState {
  campaignId: string | null;
  view: CampaignView | null;
  target: ConfigBody | null; // design point or suggestion being measured
  rows: RawOutcomeRow[];
  front: FrontResponse | null;
  history: HistoryResponse | null;
  submitting: boolean;
  error: string;
  notice: string;
}

const state: UiState = {
  campaignId: null,
  view: null,
  target: null,
  rows: [],
  front: null,
  history: null,
  submitting: false,
  error: '',
  notice: '',
};

function emptyRows(r: number): RawOutcomeRow[] {
  return Array.from({ length: r }, () => ({
    strength: '',
    cost: '',
    failure_mode: '',
    visual_damage: false,
  }));
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function escapeHtml(text: string): string {
  return text.replace(/[&<>"']/g, (c) => `&#${c.charCodeAt(0)};`);
}

async function refresh(): Promise<void> {
  if (!state.campaignId) return;
  try {
    const [view, front, history] = await Promise.all([
      getCampaign(state.campaignId),
      getFront(state.campaignId),
      getHistory(state.campaignId),
    ]);
    state.view = view;
    state.front = front;
    state.history = history;
    state.error = '';
    await pickTarget();
  } catch (err) {
    state.error = err instanceof Error ? err.message : String(err);
  }
  render();
}

/** The configuration the operator should measure next. */
async function pickTarget(): Promise<void> {
  const view = state.view;
  if (!view || !state.campaignId) return;
  let next: ConfigBody | null = null;
  if (view.phase === 'design') {
    next = view.remaining_design[0] ?? null;
  } else if (view.phase === 'optimizing') {
    const suggestion = await getSuggestion(state.campaignId);
    next = suggestion.config;
  }
  const changed = (next?.record ?? null) !== (state.target?.record ?? null);
  if (changed) {
    state.target = next;
    state.rows = emptyRows(view.replications);
  }
}

function render(): void {
  renderStatus();
  renderSuggestion();
  renderForm();
  renderCharts();
  const errorBox = el('error');
  errorBox.textContent = state.error;
  errorBox.hidden = state.error === '';
  const noticeBox = el('notice');
  noticeBox.textContent = state.notice;
  noticeBox.hidden = state.notice === '';
}

function renderStatus(): void {
  const box = el('status');
  if (!state.view) {
    box.innerHTML = '';
    return;
  }
  const { phase, told, budget, replications } = state.view;
  box.innerHTML = `
    <span class="phase phase-${phase}">${phase}</span>
    <span>${told} / ${budget} configurations told</span>
    <span>${replications} replications each</span>
    <span>campaign <code>${escapeHtml(state.campaignId ?? '')}</code></span>`;
}

function renderSuggestion(): void {
  const box = el('suggestion');
  if (!state.view) {
    box.innerHTML = '';
    return;
  }
  if (state.view.phase === 'exhausted' || !state.target) {
    box.innerHTML =
      state.view.phase === 'exhausted'
        ? '<h2>Budget exhausted</h2><p>The campaign is complete; the front below is final.</p>'
        : '';
    return;
  }
  const heading =
    state.view.phase === 'design'
      ? `Initial design: ${state.view.remaining_design.length} configurations left to run`
      : `Suggested configuration (iteration ${state.view.iteration + 1})`;
  const lines = suggestionCardLines(state.target)
    .map(
      (line) =>
        `<div class="card-line"><span class="card-label">${line.label}</span>` +
        `<span class="card-value">${line.value}</span></div>`,
    )
    .join('');
  box.innerHTML = `
    <h2>${heading}</h2>
    <div class="card" data-testid="suggestion-card">${lines}</div>
    <p class="record">record: <code data-testid="record">${escapeHtml(state.target.record)}</code>
      <button id="copy-record" type="button">copy</button></p>`;
  el('copy-record').addEventListener('click', () => {
    void navigator.clipboard?.writeText(state.target?.record ?? '');
  });
}

function renderForm(): void {
  const box = el('form-box');
  if (!state.view || !state.target || state.view.phase === 'exhausted') {
    box.innerHTML = '';
    return;
  }
  const rows = state.rows
    .map((row, i) => {
      const errors = validateRow(row);
      const touched = row.strength !== '' || row.cost !== '' || row.failure_mode !== '';
      const message = touched ? Object.values(errors)[0] ?? '' : '';
      const options = FAILURE_MODES.map(
        (mode) =>
          `<option value="${mode}" ${row.failure_mode === mode ? 'selected' : ''}>${mode}</option>`,
      ).join('');
      return `
        <tr data-row="${i}">
          <td>${i + 1}</td>
          <td><input data-field="strength" data-row="${i}" inputmode="decimal"
                     value="${escapeHtml(row.strength)}" placeholder="MPa"></td>
          <td><input data-field="cost" data-row="${i}" inputmode="decimal"
                     value="${escapeHtml(row.cost)}" placeholder="EUR"></td>
          <td><select data-field="failure_mode" data-row="${i}">
                <option value="" ${row.failure_mode === '' ? 'selected' : ''}>choose</option>
                ${options}
              </select></td>
          <td><input type="checkbox" data-field="visual_damage" data-row="${i}"
                     ${row.visual_damage ? 'checked' : ''}></td>
          <td class="row-error">${escapeHtml(message)}</td>
        </tr>`;
    })
    .join('');
  const complete = formIsComplete(state.rows, state.view.replications);
  box.innerHTML = `
    <h2>Measured outcomes</h2>
    <table class="outcome-table">
      <thead><tr><th>#</th><th>strength</th><th>cost</th><th>failure mode</th><th>visual damage</th><th></th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
    <button id="submit" type="button" ${complete && !state.submitting ? '' : 'disabled'}>
      ${state.submitting ? 'Submitting…' : 'Submit outcomes'}
    </button>`;
  box.querySelectorAll('input,select').forEach((node) => {
    node.addEventListener('change', onFieldChange);
    if (node instanceof HTMLInputElement && node.type !== 'checkbox') {
      node.addEventListener('input', onFieldChange);
    }
  });
  el('submit').addEventListener('click', () => void submit());
}

function onFieldChange(event: Event): void {
  const node = event.target as HTMLInputElement | HTMLSelectElement;
  const index = Number(node.dataset.row);
  const field = node.dataset.field;
  const row = state.rows[index];
  if (!row || !field) return;
  if (field === 'visual_damage') {
    row.visual_damage = (node as HTMLInputElement).checked;
  } else if (field === 'strength' || field === 'cost' || field === 'failure_mode') {
    row[field] = node.value;
  }
  renderForm();
}

async function submit(): Promise<void> {
  if (!state.campaignId || !state.target || !state.view) return;
  if (!formIsComplete(state.rows, state.view.replications) || state.submitting) return;
  state.submitting = true;
  state.error = '';
  renderForm();
  try {
    const result = await postObservations(
      state.campaignId,
      state.target.record,
      toOutcomeRows(state.rows),
    );
    state.notice = `Recorded: feasibility ${formatPf(result.pf)} (${result.told} configurations told)`;
    state.target = null;
    await refresh();
  } catch (err) {
    // 409/422 details surface verbatim; the form re-enables for correction
    state.error = err instanceof ApiError ? err.detail : String(err);
  } finally {
    state.submitting = false;
    render();
  }
}

function renderCharts(): void {
  const scatterBox = el('scatter');
  const hvBox = el('hv-chart');
  if (!state.front || state.front.points.length === 0) {
    scatterBox.innerHTML = '<p class="empty-hint">No feasible front points yet — submit outcomes to populate the chart.</p>';
  } else {
    const layout = scatterLayout(state.front);
    const dots = layout.points
      .map((p) =>
        p.kind === 'reference'
          ? `<g class="ref-point"><line x1="${p.x - 6}" y1="${p.y}" x2="${p.x + 6}" y2="${p.y}"/>` +
            `<line x1="${p.x}" y1="${p.y - 6}" x2="${p.x}" y2="${p.y + 6}"/><title>${p.title}</title></g>`
          : `<circle class="front-point" cx="${p.x}" cy="${p.y}" r="5"><title>${p.title}</title></circle>`,
      )
      .join('');
    scatterBox.innerHTML = `
      <svg viewBox="0 0 ${layout.width} ${layout.height}" role="img" aria-label="Pareto front">
        <text x="${layout.width / 2}" y="${layout.height - 4}" class="axis-label">${layout.xLabel}</text>
        <text x="12" y="${layout.height / 2}" class="axis-label" transform="rotate(-90 12 ${layout.height / 2})">${layout.yLabel}</text>
        ${dots}
      </svg>
      <p>hypervolume: <strong data-testid="hv">${formatHv(state.front.hv)}</strong></p>`;
  }
  if (!state.history || state.history.hv.length === 0) {
    hvBox.innerHTML = '<p class="empty-hint">Hypervolume progress appears after the first outcomes.</p>';
  } else {
    const layout = hvLineLayout(state.history);
    hvBox.innerHTML = `
      <svg viewBox="0 0 ${layout.width} ${layout.height}" role="img" aria-label="Hypervolume progress">
        <polyline class="hv-line" fill="none" points="${layout.path}"/>
      </svg>`;
  }
}

async function openCampaign(id: string): Promise<void> {
  state.campaignId = id;
  window.location.hash = `campaign=${id}`;
  el<HTMLElement>('setup').hidden = true;
  el<HTMLElement>('main').hidden = false;
  await refresh();
}

function wireSetup(): void {
  el('open-campaign').addEventListener('click', () => {
    const id = el<HTMLInputElement>('campaign-id').value.trim();
    if (id) void openCampaign(id);
  });
  el('create-campaign').addEventListener('click', async () => {
    try {
      const created = await createCampaign({});
      state.notice = `Campaign created with ${created.design.length} design points.`;
      await openCampaign(created.id);
    } catch (err) {
      state.error = err instanceof Error ? err.message : String(err);
      render();
    }
  });
}

export async function initApp(options: { poll?: boolean } = {}): Promise<void> {
  wireSetup();
  const match = window.location.hash.match(/campaign=([0-9a-f-]+)/i);
  if (match && match[1]) {
    await openCampaign(match[1]);
  }
  if (options.poll !== false) {
    window.setInterval(() => void refresh(), POLL_MS);
  }
}

/** Test hooks: drive the app without timers and inspect state. */
export const _internals = { state, refresh, submit, render };
