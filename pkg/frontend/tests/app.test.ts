// @vitest-environment jsdom
/** End-to-end drive of the operator page against a scripted /v1 service:
 * the suggestion card must render all six variables, and submitting a
 * complete outcome form must refresh the front scatter. */

import { beforeEach, describe, expect, it, vi } from 'vitest';

import { _internals, initApp } from '../src/app.js';
import type { ConfigBody } from '../src/types.js';

const DESIGN_POINT: ConfigBody = {
  v1: 0,
  v2: 400,
  v3: 127.5,
  v4: 1.1,
  v5: 13,
  v6: 30,
  record: 'v1=0 v2=400 v3=127.5 v4=1.1 v5=13 v6=30',
};

const SUGGESTION: ConfigBody = {
  v1: 1,
  v2: 481.25,
  v3: 12.5,
  v4: 0.4,
  v5: 44,
  v6: 2.5,
  record: 'v1=1 v2=481.25 v3=12.5 v4=0.4 v5=44 v6=2.5',
};

interface MockService {
  phase: 'design' | 'optimizing' | 'exhausted';
  told: number;
  frontPoints: number;
  remaining: ConfigBody[];
  observationBodies: unknown[];
  reject422: string | null;
}

function makeService(): MockService {
  return {
    phase: 'design',
    told: 0,
    frontPoints: 0,
    remaining: [DESIGN_POINT],
    observationBodies: [],
    reject422: null,
  };
}

function json(status: number, body: unknown) {
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    json: async () => body,
  };
}

function frontBody(service: MockService) {
  return {
    hv: service.frontPoints > 0 ? 41.5 : 0,
    reference: { cost: 3, strength: 4 },
    points: Array.from({ length: service.frontPoints }, (_, i) => ({
      config: DESIGN_POINT,
      cost_mean: 0.8 + 0.3 * i,
      strength_mean: 25 - 2 * i,
      neg_ts_mean: -(25 - 2 * i),
      pc_mean: 0.8 + 0.3 * i,
      pf: 1,
    })),
  };
}

function installFetchMock(service: MockService) {
  const mock = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? 'GET';
    if (url.endsWith('/v1/campaigns/abc123') && method === 'GET') {
      return json(200, {
        id: 'abc123',
        phase: service.phase,
        replications: 2,
        budget: 3,
        told: service.told,
        iteration: 0,
        remaining_design: service.remaining,
        has_pending: false,
      });
    }
    if (url.endsWith('/suggestion')) {
      if (service.phase === 'design') return json(409, { detail: 'design incomplete' });
      if (service.phase === 'exhausted') return json(410, { detail: 'budget exhausted' });
      return json(200, { iteration: 1, config: SUGGESTION });
    }
    if (url.endsWith('/observations') && method === 'POST') {
      const body = JSON.parse(String(init?.body));
      service.observationBodies.push(body);
      if (service.reject422) return json(422, { detail: service.reject422 });
      service.told += 1;
      service.frontPoints += 1;
      service.remaining = [];
      service.phase = 'optimizing';
      return json(200, {
        pf: 1,
        majority_feasible: true,
        strength_mean: 25,
        cost_mean: 0.8,
        told: service.told,
        phase: service.phase,
      });
    }
    if (url.endsWith('/front')) return json(200, frontBody(service));
    if (url.endsWith('/history')) {
      return json(200, { hv: Array.from({ length: service.told }, (_, i) => i), evaluations: service.told });
    }
    return json(404, { detail: `unhandled ${method} ${url}` });
  });
  vi.stubGlobal('fetch', mock);
  return mock;
}

function mountPage() {
  document.body.innerHTML = `
    <section id="setup">
      <input id="campaign-id"><button id="open-campaign"></button>
      <button id="create-campaign"></button>
    </section>
    <div id="notice" hidden></div>
    <div id="error" hidden></div>
    <main id="main" hidden>
      <section id="status"></section>
      <section id="suggestion"></section>
      <section id="form-box"></section>
      <div id="scatter"></div>
      <div id="hv-chart"></div>
    </main>`;
}

function fillForm(values: Array<{ strength: string; cost: string; mode: string }>) {
  values.forEach((value, i) => {
    const strength = document.querySelector<HTMLInputElement>(
      `input[data-field="strength"][data-row="${i}"]`,
    )!;
    strength.value = value.strength;
    strength.dispatchEvent(new Event('input', { bubbles: true }));
    const cost = document.querySelector<HTMLInputElement>(
      `input[data-field="cost"][data-row="${i}"]`,
    )!;
    cost.value = value.cost;
    cost.dispatchEvent(new Event('input', { bubbles: true }));
    const mode = document.querySelector<HTMLSelectElement>(
      `select[data-field="failure_mode"][data-row="${i}"]`,
    )!;
    mode.value = value.mode;
    mode.dispatchEvent(new Event('change', { bubbles: true }));
  });
}

async function openCampaign() {
  window.location.hash = 'campaign=abc123';
  await initApp({ poll: false });
  await Promise.resolve();
}

beforeEach(() => {
  vi.unstubAllGlobals();
  mountPage();
  _internals.state.campaignId = null;
  _internals.state.target = null;
  _internals.state.error = '';
  _internals.state.notice = '';
  _internals.state.submitting = false;
});

describe('suggestion card', () => {
  it('renders all six variables with units from the design point', async () => {
    installFetchMock(makeService());
    await openCampaign();
    const card = document.querySelector('[data-testid="suggestion-card"]')!;
    const text = card.textContent!;
    expect(text).toContain('Pre-processing');
    expect(text).toContain('No');
    expect(text).toContain('400 W');
    expect(text).toContain('127.5 mm/s');
    expect(text).toContain('1.1 cm');
    expect(text).toContain('Passes');
    expect(text).toContain('13');
    expect(text).toContain('30 min');
    expect(document.querySelector('[data-testid="record"]')!.textContent).toBe(
      DESIGN_POINT.record,
    );
  });
});

describe('outcome form', () => {
  it('keeps submit disabled until every row is complete', async () => {
    installFetchMock(makeService());
    await openCampaign();
    const submit = () => document.querySelector<HTMLButtonElement>('#submit')!;
    expect(submit().disabled).toBe(true);
    fillForm([{ strength: '25', cost: '0.8', mode: 'substrate' }]);
    expect(submit().disabled).toBe(true); // second row still empty
    fillForm([
      { strength: '25', cost: '0.8', mode: 'substrate' },
      { strength: '24', cost: '0.8', mode: 'cohesive' },
    ]);
    expect(submit().disabled).toBe(false);
  });

  it('rejects a negative strength with an inline message', async () => {
    installFetchMock(makeService());
    await openCampaign();
    fillForm([
      { strength: '-3', cost: '0.8', mode: 'substrate' },
      { strength: '24', cost: '0.8', mode: 'cohesive' },
    ]);
    expect(document.body.textContent).toContain('Strength cannot be negative');
    expect(document.querySelector<HTMLButtonElement>('#submit')!.disabled).toBe(true);
  });

  it('submits exactly the replication rows and updates the front scatter', async () => {
    const service = makeService();
    installFetchMock(service);
    await openCampaign();
    expect(document.querySelectorAll('circle.front-point')).toHaveLength(0);
    fillForm([
      { strength: '25', cost: '0.8', mode: 'substrate' },
      { strength: '24', cost: '0.8', mode: 'cohesive' },
    ]);
    document.querySelector<HTMLButtonElement>('#submit')!.click();
    await vi.waitFor(() => {
      expect(service.observationBodies).toHaveLength(1);
      expect(document.querySelectorAll('circle.front-point')).toHaveLength(1);
    });
    const body = service.observationBodies[0] as {
      config: string;
      outcomes: Array<{ strength: number }>;
    };
    expect(body.config).toBe(DESIGN_POINT.record);
    expect(body.outcomes).toHaveLength(2);
    expect(body.outcomes[0]).toEqual({
      strength: 25,
      cost: 0.8,
      failure_mode: 'substrate',
      visual_damage: false,
    });
    // after the design completes, the next suggestion is rendered
    expect(document.querySelector('[data-testid="record"]')!.textContent).toBe(SUGGESTION.record);
  });

  it('surfaces a 422 verbatim and re-enables the form', async () => {
    const service = makeService();
    service.reject422 = 'expected exactly 2 outcome rows, got 1';
    installFetchMock(service);
    await openCampaign();
    fillForm([
      { strength: '25', cost: '0.8', mode: 'substrate' },
      { strength: '24', cost: '0.8', mode: 'cohesive' },
    ]);
    document.querySelector<HTMLButtonElement>('#submit')!.click();
    await vi.waitFor(() => {
      expect(document.querySelector('#error')!.textContent).toContain(
        'expected exactly 2 outcome rows, got 1',
      );
    });
    expect(document.querySelector<HTMLButtonElement>('#submit')!.disabled).toBe(false);
  });
});

describe('charts', () => {
  it('shows an empty-state hint without front points', async () => {
    installFetchMock(makeService());
    await openCampaign();
    expect(document.querySelector('#scatter')!.textContent).toContain('No feasible front points');
  });

  it('marks the reference point alongside front points', async () => {
    const service = makeService();
    service.frontPoints = 2;
    service.told = 1;
    installFetchMock(service);
    await openCampaign();
    expect(document.querySelectorAll('circle.front-point')).toHaveLength(2);
    expect(document.querySelectorAll('g.ref-point')).toHaveLength(1);
    expect(document.querySelector('#hv-chart svg')).not.toBeNull();
  });
});
