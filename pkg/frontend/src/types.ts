/** Response shapes of the covchain control API. */

export interface PipelineRecord {
  case_id: string;
  pattern_id: string;
  pattern_text: string;
  n_contacts: number;
  n_places: number;
  person_codes: number;
  building_codes: number;
  block_height: number | null;
  mining: {
    winner_miner: number;
    winning_code: string;
    bhc: string;
    tries_per_miner: number[];
    met_difficulty: boolean;
  } | null;
}

export interface BlockSummary {
  height: number;
  n_patterns: number;
  bhc: string;
  prev_hash: string;
  merkle_root: string;
  winning_code: string;
  timestamp: string;
}

export interface VerifyResult {
  code: string;
  valid: boolean;
  pattern_id: string | null;
  case_id: string | null;
  contagion_place: string | null;
  contagion_time: string | null;
  undispatched: boolean;
}

export interface Suspect {
  client_id: string;
  n_codes: number;
  risk: number;
}

export interface ApiError {
  error: string;
  detail: string;
}

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, body: ApiError) {
    super(body.detail);
    this.status = status;
    this.code = body.error;
  }
}
