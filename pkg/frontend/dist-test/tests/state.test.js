// Snapshot tests against recorded API fixtures (frontend/fixtures/*.json,
// regenerated by record_fixtures.py).  The view must carry server payloads
// verbatim: every comparison here is byte-for-byte.
import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { test } from "node:test";
import { arrowsFromMatrix, layoutSize, vertexPosition } from "../src/quiver.js";
import { applyDetail, applyError, applyMutate, applySession, applyUndo, denominatorText, exchangeLine, initialView, labelText, seedFingerprint, stableStringify, } from "../src/state.js";
function fixture(name) {
    const url = new URL(`../../fixtures/${name}.json`, import.meta.url);
    return JSON.parse(readFileSync(url, "utf8"));
}
const created = fixture("session_create_a3");
const mutated = fixture("mutate_k2");
const mutatedAgain = fixture("mutate_k2_again");
const undone = fixture("undo_once");
const frozen409 = fixture("frozen_409");
const char422 = fixture("char_422");
const variableX1 = fixture("variable_x1");
const variableMutated = fixture("variable_after_mutate");
const variableFrozen = fixture("variable_frozen_f2");
test("mutate twice restores the initial seed byte-for-byte", () => {
    let view = applySession(initialView(), created);
    const initialFingerprint = seedFingerprint(view);
    view = applyMutate(view, mutated);
    assert.notEqual(seedFingerprint(view), initialFingerprint);
    view = applyMutate(view, mutatedAgain);
    assert.equal(seedFingerprint(view), initialFingerprint);
    assert.equal(view.seed?.history.length, 2);
    assert.equal(view.historyPanel.length, 2);
});
test("displayed exchange relation is the server string verbatim", () => {
    let view = applySession(initialView(), created);
    view = applyMutate(view, mutated);
    assert.equal(exchangeLine(view), mutated.exchange.relation);
    assert.equal(exchangeLine(view), "(x2) * (x1*x2^-1*x3 + x2^-1*f2) = f2 + x1 * x3");
});
test("denominator vectors byte-match the recorded payload", () => {
    let view = applySession(initialView(), created);
    view = applyMutate(view, mutated);
    mutated.denominators.forEach((dv, index) => {
        assert.equal(denominatorText(view, index), JSON.stringify(dv));
    });
    // the freshly mutated variable carries the alpha_2 denominator
    assert.equal(denominatorText(view, 1), "[0,1,0]");
    assert.equal(labelText(view, 1), "[0,1,0]");
});
test("variable detail panel shows server fields verbatim", () => {
    let view = applySession(initialView(), created);
    view = applyMutate(view, mutated);
    view = applyDetail(view, variableMutated);
    assert.equal(view.detail?.expansion, "x1*x2^-1*x3 + x2^-1*f2");
    assert.deepEqual(view.detail?.g_vector, [0, -1, 0]);
    assert.equal(view.detail?.character?.polynomial, variableMutated.character?.polynomial);
    view = applyDetail(view, variableFrozen);
    assert.ok(view.detail?.frozen);
    assert.match(view.detail?.kr_label ?? "", /^W\^\(2\)_\(2,/);
});
test("undo replay matches the recorded server answer", () => {
    // recorded sequence: create -> mutate k2 -> mutate k2 -> undo,
    // so undo lands on the once-mutated seed
    let view = applySession(initialView(), created);
    view = applyMutate(view, mutated);
    const afterOne = seedFingerprint(view);
    view = applyMutate(view, mutatedAgain);
    view = applyUndo(view, undone);
    assert.equal(seedFingerprint(view), afterOne);
    assert.equal(stableStringify(undone.seed), stableStringify(mutated.seed));
    assert.deepEqual(view.seed?.history, [2]);
});
test("frozen-direction mutation renders the 409 inline notice", () => {
    let view = applySession(initialView(), created);
    view = applyError(view, frozen409);
    assert.equal(view.banner, `409: ${frozen409.error}`);
});
test("out-of-scope character request renders the 422 banner", () => {
    let view = applySession(initialView(), created);
    view = applyError(view, char422);
    assert.equal(char422.status, 422);
    assert.equal(view.banner, `422: ${char422.error}`);
    assert.match(view.banner ?? "", /not an almost positive root/);
});
test("quiver arrows come straight from the exchange matrix", () => {
    const arrows = arrowsFromMatrix(created.seed.matrix);
    // A3 ladder: 1<-1', 1->2, 3->2 ... encoded as (from, to) vertex indices
    assert.deepEqual(arrows, [
        { from: 0, to: 1, mult: 1 },
        { from: 1, to: 4, mult: 1 },
        { from: 2, to: 1, mult: 1 },
        { from: 3, to: 0, mult: 1 },
        { from: 5, to: 2, mult: 1 },
    ]);
    // x1 detail fixture agrees with the grid: vertex 0 is (i=1, k=1)
    assert.deepEqual(created.grid[0], { i: 1, k: 1 });
    assert.equal(variableX1.expansion, "x1");
});
test("grid layout is the fixed ladder, not force-directed", () => {
    const p11 = vertexPosition({ i: 1, k: 1 });
    const p12 = vertexPosition({ i: 1, k: 2 });
    const p21 = vertexPosition({ i: 2, k: 1 });
    assert.equal(p11.y, p12.y);
    assert.equal(p11.x, p21.x);
    const size = layoutSize(created.grid);
    assert.ok(size.x > 0 && size.y > 0);
});
test("stableStringify sorts keys deterministically", () => {
    assert.equal(stableStringify({ b: 1, a: [2, { d: 3, c: 4 }] }), '{"a":[2,{"c":4,"d":3}],"b":1}');
});
