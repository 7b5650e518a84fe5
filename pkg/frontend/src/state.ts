import type { DocumentPayload, Selection } from "./types.js";

export const DEFAULT_STEPS_PER_TRANSITION = 30;

export interface PlaybackState {
  playing: boolean;
  /** Transition currently animating: from instance `transition` to +1. */
  transition: number;
  /** 0 = at the source instance, stepsPerTransition = at the target. */
  frameIndex: number;
  stepsPerTransition: number;
}

export interface ViewerState {
  doc: DocumentPayload | null;
  selectedInstance: number;
  zoom: number;
  selection: Selection;
  playback: PlaybackState;
  notice: string | null;
}

export function initialState(): ViewerState {
  return {
    doc: null,
    selectedInstance: 0,
    zoom: 1.0,
    selection: null,
    playback: {
      playing: false,
      transition: 0,
      frameIndex: 0,
      stepsPerTransition: DEFAULT_STEPS_PER_TRANSITION,
    },
    notice: null,
  };
}

export function instanceCount(state: ViewerState): number {
  return state.doc ? state.doc.instances.length : 0;
}

export function canNavigate(state: ViewerState, target: number): boolean {
  return target >= 0 && target < instanceCount(state);
}

/** Select an instance; out-of-range targets are a no-op (disabled control). */
export function selectInstance(state: ViewerState, target: number): ViewerState {
  if (!canNavigate(state, target)) {
    return state;
  }
  return {
    ...state,
    selectedInstance: target,
    selection: null,
    playback: { ...state.playback, playing: false, transition: Math.min(target, Math.max(instanceCount(state) - 2, 0)), frameIndex: 0 },
  };
}

export function nextInstance(state: ViewerState): ViewerState {
  return selectInstance(state, state.selectedInstance + 1);
}

export function previousInstance(state: ViewerState): ViewerState {
  return selectInstance(state, state.selectedInstance - 1);
}

/** Zoom rescales the canvas only; model coordinates are untouched. */
export function setZoom(state: ViewerState, zoom: number): ViewerState {
  if (!(zoom > 0) || !Number.isFinite(zoom)) {
    return state;
  }
  return { ...state, zoom };
}

export function setSelection(state: ViewerState, selection: Selection): ViewerState {
  return { ...state, selection };
}

export function withDocument(state: ViewerState, doc: DocumentPayload): ViewerState {
  const selected = Math.min(state.selectedInstance, Math.max(doc.instances.length - 1, 0));
  return { ...state, doc, selectedInstance: selected, notice: null };
}

export function withNotice(state: ViewerState, notice: string | null): ViewerState {
  return { ...state, notice };
}

/** Positions to draw right now: the selected instance's stored geometry. */
export function restPositions(state: ViewerState): Record<string, { x: number; y: number }> {
  if (!state.doc) {
    return {};
  }
  const inst = state.doc.instances[state.selectedInstance];
  const out: Record<string, { x: number; y: number }> = {};
  for (const [vid, vertex] of Object.entries(inst.vertices)) {
    out[vid] = { x: vertex.x, y: vertex.y };
  }
  return out;
}
