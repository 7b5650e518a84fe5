import { ApiClient } from "./api.js";
import type { Frame, FramePoint } from "./types.js";
import type { ViewerState } from "./state.js";
import { restPositions } from "./state.js";

export const FRAME_INTERVAL_MS = 33; // ~30 frames per second

export interface PlayerHooks {
  getState: () => ViewerState;
  setPlayback: (playing: boolean, transition: number, frameIndex: number) => void;
  onFrame: (positions: Record<string, FramePoint>) => void;
}

type Timer = ReturnType<typeof setInterval>;

/**
 * Streams interpolated frames from the service and advances them on a fixed
 * cadence, transition after transition, until the last instance or stop().
 * Frames for a transition are fetched once; zooming never refetches because
 * scale only affects how the canvas draws what it is handed.
 */
export class TransitionPlayer {
  private timer: Timer | null = null;
  private frames: Frame[] = [];
  private loading = false;

  constructor(private readonly api: ApiClient, private readonly hooks: PlayerHooks) {}

  get playing(): boolean {
    return this.timer !== null;
  }

  /** Start is disabled (a no-op) on documents with fewer than two instances. */
  async start(): Promise<boolean> {
    const state = this.hooks.getState();
    if (!state.doc || state.doc.instances.length < 2 || this.playing) {
      return false;
    }
    const transition = Math.min(state.selectedInstance, state.doc.instances.length - 2);
    await this.beginTransition(transition);
    this.timer = setInterval(() => this.tick(), FRAME_INTERVAL_MS);
    return true;
  }

  /** Freeze at the current blend; the canvas keeps the last emitted frame. */
  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
    const state = this.hooks.getState();
    this.hooks.setPlayback(false, state.playback.transition, state.playback.frameIndex);
  }

  private async beginTransition(transition: number): Promise<void> {
    const state = this.hooks.getState();
    const steps = state.playback.stepsPerTransition;
    this.loading = true;
    try {
      const payload = await this.api.getFrames(state.doc!.id, transition, steps);
      this.frames = payload.frames;
      this.hooks.setPlayback(true, transition, 0);
      this.hooks.onFrame(restPositions({ ...state, selectedInstance: transition }));
    } finally {
      this.loading = false;
    }
  }

  private tick(): void {
    if (this.loading) {
      return;
    }
    const state = this.hooks.getState();
    if (!state.doc) {
      this.stop();
      return;
    }
    const { transition, frameIndex, stepsPerTransition } = state.playback;
    if (frameIndex < this.frames.length) {
      this.hooks.onFrame(this.frames[frameIndex]);
      this.hooks.setPlayback(true, transition, frameIndex + 1);
      return;
    }
    const nextTransition = transition + 1;
    if (nextTransition >= state.doc.instances.length - 1) {
      this.stop();
      this.hooks.setPlayback(false, transition, stepsPerTransition);
      return;
    }
    // fetch the next transition off the timer; frames keep flowing when it lands
    void this.beginTransition(nextTransition);
  }
}
