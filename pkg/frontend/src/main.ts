// Wiring: clicks -> API calls -> reducers -> render.  One request in
// flight per session; the server's answer is always awaited before the view
// updates (no optimistic state).

import { ApiFailure, createSession, mutate, undo, variableDetail } from "./api.js";
import { renderAll } from "./render.js";
import {
  ViewState,
  applyDetail,
  applyError,
  applyMutate,
  applySession,
  applyUndo,
  initialView,
} from "./state.js";

let view: ViewState = initialView();
let busy = false;

function update(next: ViewState): void {
  view = next;
  renderAll(view, { onVertexClick: handleVertexClick });
}

async function guarded(action: () => Promise<ViewState>): Promise<void> {
  if (busy) return;
  busy = true;
  try {
    update(await action());
  } catch (err) {
    if (err instanceof ApiFailure) {
      update(applyError(view, { status: err.status, error: err.message }));
    } else {
      update(applyError(view, { status: 0, error: String(err) }));
    }
  } finally {
    busy = false;
  }
}

function handleVertexClick(index: number): void {
  const seed = view.seed;
  const session = view.session;
  if (!seed || !session) return;
  const mutableCount = seed.seed.matrix[0].length;
  void guarded(async () => {
    if (index < mutableCount) {
      const payload = await mutate(session, index + 1);
      let next = applyMutate(view, payload);
      const detail = await variableDetail(session, index);
      next = applyDetail(next, detail);
      return next;
    }
    // frozen vertex: only inspect; a mutation attempt would be a 409
    const detail = await variableDetail(session, index);
    return applyDetail(view, detail);
  });
}

function bindControls(): void {
  const typeInput = document.getElementById("type") as HTMLSelectElement;
  const ellInput = document.getElementById("ell") as HTMLInputElement;
  document.getElementById("new-session")?.addEventListener("click", () => {
    void guarded(async () => {
      const payload = await createSession(typeInput.value, Number(ellInput.value));
      return applySession(view, payload);
    });
  });
  document.getElementById("undo")?.addEventListener("click", () => {
    const session = view.session;
    if (!session) return;
    void guarded(async () => applyUndo(view, await undo(session)));
  });
}

window.addEventListener("DOMContentLoaded", () => {
  bindControls();
  void guarded(async () => applySession(view, await createSession("A3", 1)));
});
