// ViewState and its pure reducers.  All functions here are side-effect
// free so the fixture tests can drive them without a browser; rendering
// happens elsewhere and always reads server strings verbatim.

import {
  ApiErrorPayload,
  ExchangePayload,
  MutatePayload,
  SeedPayload,
  VariableDetail,
} from "./types.js";

export interface ViewState {
  session: string | null;
  type: string;
  ell: number;
  seed: SeedPayload | null;
  selected: number | null;
  detail: VariableDetail | null;
  lastExchange: ExchangePayload | null;
  banner: string | null;
  historyPanel: string[];
}

export function initialView(): ViewState {
  return {
    session: null,
    type: "",
    ell: 1,
    seed: null,
    selected: null,
    detail: null,
    lastExchange: null,
    banner: null,
    historyPanel: [],
  };
}

export function applySession(view: ViewState, payload: SeedPayload): ViewState {
  return {
    ...view,
    session: payload.session ?? view.session,
    type: payload.type,
    ell: payload.ell,
    seed: payload,
    selected: null,
    detail: null,
    lastExchange: null,
    banner: null,
    historyPanel: [],
  };
}

export function applySeed(view: ViewState, payload: SeedPayload): ViewState {
  return { ...view, seed: payload, banner: null };
}

export function applyMutate(view: ViewState, payload: MutatePayload): ViewState {
  const k = payload.history[payload.history.length - 1];
  return {
    ...view,
    seed: payload,
    lastExchange: payload.exchange,
    banner: null,
    historyPanel: [...view.historyPanel, `mu_${k}: ${payload.exchange.relation}`],
  };
}

export function applyUndo(view: ViewState, payload: SeedPayload): ViewState {
  return {
    ...view,
    seed: payload,
    lastExchange: null,
    banner: null,
    historyPanel: [...view.historyPanel, "undo"],
  };
}

export function applyError(view: ViewState, error: ApiErrorPayload): ViewState {
  return { ...view, banner: `${error.status}: ${error.error}` };
}

export function clearBanner(view: ViewState): ViewState {
  return { ...view, banner: null };
}

export function selectVertex(view: ViewState, index: number): ViewState {
  return { ...view, selected: index };
}

export function applyDetail(view: ViewState, detail: VariableDetail): ViewState {
  return { ...view, detail, selected: detail.index };
}

// ---- read-only helpers the renderer uses (server strings pass through) ----

export function exchangeLine(view: ViewState): string {
  return view.lastExchange ? view.lastExchange.relation : "";
}

export function denominatorText(view: ViewState, index: number): string {
  if (!view.seed) return "";
  const dv = view.seed.denominators[index];
  return dv ? JSON.stringify(dv) : "";
}

export function labelText(view: ViewState, index: number): string {
  if (!view.seed) return "";
  const label = view.seed.labels[index];
  return label ? JSON.stringify(label) : "(unlabeled)";
}

export function variableText(view: ViewState, index: number): string {
  return view.seed ? view.seed.texts[index] ?? "" : "";
}

export function historyLength(view: ViewState): number {
  return view.seed ? view.seed.history.length : 0;
}

// Canonical JSON with sorted keys, used to compare seeds byte-for-byte.
export function stableStringify(value: unknown): string {
  if (Array.isArray(value)) {
    return "[" + value.map(stableStringify).join(",") + "]";
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.keys(value as Record<string, unknown>)
      .sort()
      .map(
        (key) =>
          JSON.stringify(key) +
          ":" +
          stableStringify((value as Record<string, unknown>)[key]),
      );
    return "{" + entries.join(",") + "}";
  }
  return JSON.stringify(value);
}

export function seedFingerprint(view: ViewState): string {
  return view.seed ? stableStringify(view.seed.seed) : "";
}
