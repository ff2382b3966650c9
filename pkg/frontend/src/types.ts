// Payload shapes of the backend JSON API (docs/api.md).  The UI never
// computes algebra: every displayed polynomial is a server string verbatim.

export interface LaurentJson {
  terms: { coeff: string; mono: Record<string, number> }[];
}

export interface SeedJson {
  matrix: number[][];
  frozen: number;
  vars: LaurentJson[];
}

export interface GridVertex {
  i: number;
  k: number;
}

export interface SeedPayload {
  seed: SeedJson;
  texts: string[];
  denominators: number[][];
  labels: (number[] | null)[];
  grid: GridVertex[];
  type: string;
  I0: number[];
  ell: number;
  history: number[];
  session?: string;
}

export interface ExchangePayload {
  old: string;
  new: string;
  m_plus: string;
  m_minus: string;
  relation: string;
}

export interface MutatePayload extends SeedPayload {
  exchange: ExchangePayload;
}

export interface CharacterPayload {
  polynomial: string;
  terms: number;
}

export interface VariableDetail {
  index: number;
  expansion: string;
  frozen: boolean;
  label?: number[] | null;
  g_vector?: number[];
  f_polynomial?: { exponents: number[]; coeff: number }[];
  character?: CharacterPayload;
  kr_label?: string;
}

export interface ApiErrorPayload {
  status: number;
  error: string;
}
