/** Thin fetch client for the /v1 campaign endpoints. */

import type {
  CampaignView,
  CreateResponse,
  FrontResponse,
  HistoryResponse,
  OutcomeRow,
  SuggestionResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, {
    headers: { 'content-type': 'application/json' },
    ...init,
  });
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = typeof body.detail === 'string' ? body.detail : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export function createCampaign(settings: {
  init_size?: number;
  budget?: number;
  replications?: number;
  seed?: number;
}): Promise<CreateResponse> {
  return request('/v1/campaigns', { method: 'POST', body: JSON.stringify(settings) });
}

export function getCampaign(id: string): Promise<CampaignView> {
  return request(`/v1/campaigns/${id}`);
}

export function getSuggestion(id: string): Promise<SuggestionResponse> {
  return request(`/v1/campaigns/${id}/suggestion`);
}

export function postObservations(
  id: string,
  config: string,
  outcomes: OutcomeRow[],
): Promise<{ pf: number; told: number; phase: string }> {
  return request(`/v1/campaigns/${id}/observations`, {
    method: 'POST',
    body: JSON.stringify({ config, outcomes }),
  });
}

export function getFront(id: string): Promise<FrontResponse> {
  return request(`/v1/campaigns/${id}/front`);
}

export function getHistory(id: string): Promise<HistoryResponse> {
  return request(`/v1/campaigns/${id}/history`);
}
