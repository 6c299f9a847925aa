/** Wire types for the campaign service's /v1 endpoints. */

export interface ConfigBody {
  v1: number;
  v2: number;
  v3: number;
  v4: number;
  v5: number;
  v6: number;
  /** Canonical key=value record, identical to the CLI format. */
  record: string;
}

export interface CreateResponse {
  id: string;
  replications: number;
  budget: number;
  design: ConfigBody[];
}

export type Phase = 'design' | 'optimizing' | 'exhausted';

export interface CampaignView {
  id: string;
  phase: Phase;
  replications: number;
  budget: number;
  told: number;
  iteration: number;
  remaining_design: ConfigBody[];
  has_pending: boolean;
}

export interface SuggestionResponse {
  iteration: number;
  config: ConfigBody;
}

export type FailureMode = 'adhesion' | 'cohesive' | 'substrate';

export interface OutcomeRow {
  strength: number;
  cost: number;
  failure_mode: FailureMode;
  visual_damage: boolean;
}

export interface ObservationResponse {
  pf: number;
  majority_feasible: boolean;
  strength_mean: number;
  cost_mean: number;
  told: number;
  phase: Phase;
}

export interface FrontPointBody {
  config: ConfigBody;
  cost_mean: number;
  strength_mean: number;
  neg_ts_mean: number;
  pc_mean: number;
  pf: number;
}

export interface FrontResponse {
  hv: number;
  reference: { cost: number; strength: number };
  points: FrontPointBody[];
}

export interface HistoryResponse {
  hv: number[];
  evaluations: number;
}

export const FAILURE_MODES: FailureMode[] = ['adhesion', 'cohesive', 'substrate'];
