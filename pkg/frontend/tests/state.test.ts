import { describe, expect, it } from "vitest";

import {
  canNavigate,
  initialState,
  instanceCount,
  nextInstance,
  previousInstance,
  restPositions,
  selectInstance,
  setSelection,
  setZoom,
  withDocument,
} from "../src/state.js";
import { lineDocument } from "./fakeServer.js";

function loaded(instances = 20) {
  return withDocument(initialState(), lineDocument("demo", instances));
}

describe("instance navigation", () => {
  it("starts at the first instance", () => {
    expect(loaded().selectedInstance).toBe(0);
  });

  it("next advances by one", () => {
    const state = nextInstance(loaded());
    expect(state.selectedInstance).toBe(1);
  });

  it("next from the last instance is a no-op (disabled control)", () => {
    let state = loaded(3);
    state = selectInstance(state, 2);
    expect(nextInstance(state).selectedInstance).toBe(2);
  });

  it("previous from the first instance is a no-op", () => {
    expect(previousInstance(loaded()).selectedInstance).toBe(0);
  });

  it("jumps directly via the navigator list", () => {
    expect(selectInstance(loaded(), 7).selectedInstance).toBe(7);
  });

  it("rejects out-of-range targets", () => {
    const state = loaded(5);
    expect(selectInstance(state, 5).selectedInstance).toBe(0);
    expect(selectInstance(state, -1).selectedInstance).toBe(0);
    expect(canNavigate(state, 4)).toBe(true);
    expect(canNavigate(state, 5)).toBe(false);
  });

  it("navigation stops playback", () => {
    const state = loaded();
    state.playback.playing = true;
    expect(selectInstance(state, 2).playback.playing).toBe(false);
  });
});

describe("zoom", () => {
  it("rescales without touching the document", () => {
    const state = loaded();
    const zoomed = setZoom(state, 2.0);
    expect(zoomed.zoom).toBe(2.0);
    expect(zoomed.doc).toBe(state.doc);
    expect(restPositions(zoomed)).toEqual(restPositions(state));
  });

  it("ignores non-positive scales", () => {
    expect(setZoom(loaded(), 0).zoom).toBe(1.0);
    expect(setZoom(loaded(), -2).zoom).toBe(1.0);
  });
});

describe("selection and positions", () => {
  it("tracks a selected vertex", () => {
    const state = setSelection(loaded(), { kind: "vertex", id: "v3" });
    expect(state.selection).toEqual({ kind: "vertex", id: "v3" });
  });

  it("rest positions mirror the stored instance geometry", () => {
    const state = selectInstance(loaded(), 4);
    const positions = restPositions(state);
    expect(positions["v1"]).toEqual({ x: 54, y: 104 });
    expect(instanceCount(state)).toBe(20);
  });

  it("clamps the selected instance when a shorter document loads", () => {
    let state = selectInstance(loaded(20), 15);
    state = withDocument(state, lineDocument("other", 4));
    expect(state.selectedInstance).toBe(3);
  });
});
