// ViewState and its pure reducers.  All functions here are side-effect
// free so the fixture tests can drive them without a browser; rendering
// happens elsewhere and always reads server strings verbatim.
export function initialView() {
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
export function applySession(view, payload) {
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
export function applySeed(view, payload) {
    return { ...view, seed: payload, banner: null };
}
export function applyMutate(view, payload) {
    const k = payload.history[payload.history.length - 1];
    return {
        ...view,
        seed: payload,
        lastExchange: payload.exchange,
        banner: null,
        historyPanel: [...view.historyPanel, `mu_${k}: ${payload.exchange.relation}`],
    };
}
export function applyUndo(view, payload) {
    return {
        ...view,
        seed: payload,
        lastExchange: null,
        banner: null,
        historyPanel: [...view.historyPanel, "undo"],
    };
}
export function applyError(view, error) {
    return { ...view, banner: `${error.status}: ${error.error}` };
}
export function clearBanner(view) {
    return { ...view, banner: null };
}
export function selectVertex(view, index) {
    return { ...view, selected: index };
}
export function applyDetail(view, detail) {
    return { ...view, detail, selected: detail.index };
}
// ---- read-only helpers the renderer uses (server strings pass through) ----
export function exchangeLine(view) {
    return view.lastExchange ? view.lastExchange.relation : "";
}
export function denominatorText(view, index) {
    if (!view.seed)
        return "";
    const dv = view.seed.denominators[index];
    return dv ? JSON.stringify(dv) : "";
}
export function labelText(view, index) {
    if (!view.seed)
        return "";
    const label = view.seed.labels[index];
    return label ? JSON.stringify(label) : "(unlabeled)";
}
export function variableText(view, index) {
    return view.seed ? view.seed.texts[index] ?? "" : "";
}
export function historyLength(view) {
    return view.seed ? view.seed.history.length : 0;
}
// Canonical JSON with sorted keys, used to compare seeds byte-for-byte.
export function stableStringify(value) {
    if (Array.isArray(value)) {
        return "[" + value.map(stableStringify).join(",") + "]";
    }
    if (value !== null && typeof value === "object") {
        const entries = Object.keys(value)
            .sort()
            .map((key) => JSON.stringify(key) +
            ":" +
            stableStringify(value[key]));
        return "{" + entries.join(",") + "}";
    }
    return JSON.stringify(value);
}
export function seedFingerprint(view) {
    return view.seed ? stableStringify(view.seed.seed) : "";
}
