import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { ViewerController } from "../src/controller.js";
import { FRAME_INTERVAL_MS, TransitionPlayer } from "../src/player.js";
import { restPositions } from "../src/state.js";
import type { FramePoint } from "../src/types.js";
import { lineDocument, makeFakeServer } from "./fakeServer.js";

async function playerSetup(instances = 20) {
  const server = makeFakeServer(lineDocument("demo", instances));
  const controller = new ViewerController(new ApiClient("", server.fetchFn));
  await controller.load("demo");
  const frames: Array<Record<string, FramePoint>> = [];
  const player = new TransitionPlayer(new ApiClient("", server.fetchFn), {
    getState: () => controller.state,
    setPlayback: (playing, transition, frameIndex) => {
      controller.state.playback = {
        ...controller.state.playback, playing, transition, frameIndex,
      };
    },
    onFrame: (positions) => frames.push(positions),
  });
  return { server, controller, player, frames };
}

async function advance(ms: number) {
  await vi.advanceTimersByTimeAsync(ms);
}

describe("transition player", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("streams 30 frames per transition and then continues", async () => {
    const { server, player, frames } = await playerSetup();
    expect(await player.start()).toBe(true);
    expect(server.frameRequests).toEqual([{ from: 0, steps: 30 }]);
    await advance(FRAME_INTERVAL_MS * 31);
    expect(frames.length).toBeGreaterThanOrEqual(30);
    await advance(FRAME_INTERVAL_MS * 5);
    expect(server.frameRequests.length).toBe(2);
    expect(server.frameRequests[1]).toEqual({ from: 1, steps: 30 });
    player.stop();
  });

  it("frame positions interpolate toward the next instance", async () => {
    const { server, controller, player, frames } = await playerSetup();
    await player.start();
    await advance(FRAME_INTERVAL_MS * 30);
    const last = frames[frames.length - 1];
    const target = server.doc.instances[1].vertices["v1"];
    expect(last["v1"].x).toBeCloseTo(target.x, 6);
    expect(last["v1"].y).toBeCloseTo(target.y, 6);
    expect(controller.state.playback.transition).toBe(0);
    player.stop();
  });

  it("stop freezes at the current blend", async () => {
    const { controller, player, frames } = await playerSetup();
    await player.start();
    await advance(FRAME_INTERVAL_MS * 10);
    const atStop = frames.length;
    const frozenIndex = controller.state.playback.frameIndex;
    player.stop();
    await advance(FRAME_INTERVAL_MS * 20);
    expect(frames.length).toBe(atStop);
    expect(controller.state.playback.frameIndex).toBe(frozenIndex);
    expect(controller.state.playback.playing).toBe(false);
  });

  it("start is disabled on single-instance documents", async () => {
    const { player } = await playerSetup(1);
    expect(await player.start()).toBe(false);
    expect(player.playing).toBe(false);
  });

  it("stops for good after the final transition", async () => {
    const { controller, player } = await playerSetup(3);
    await player.start();
    await advance(FRAME_INTERVAL_MS * 70);
    expect(player.playing).toBe(false);
    expect(controller.state.playback.playing).toBe(false);
    expect(controller.state.playback.transition).toBe(1);
  });

  it("rendered positions equal server positions at playback rest", async () => {
    const { server, controller, player } = await playerSetup();
    await player.start();
    await advance(FRAME_INTERVAL_MS * 5);
    player.stop();
    const rest = restPositions(controller.state);
    const serverInstance = server.doc.instances[controller.state.selectedInstance];
    for (const [vid, pos] of Object.entries(rest)) {
      expect(pos.x).toBe(serverInstance.vertices[vid].x);
      expect(pos.y).toBe(serverInstance.vertices[vid].y);
    }
  });

  it("zooming during playback does not refetch frames", async () => {
    const { server, controller, player } = await playerSetup();
    await player.start();
    await advance(FRAME_INTERVAL_MS * 5);
    controller.zoom(2.0);
    await advance(FRAME_INTERVAL_MS * 5);
    expect(server.frameRequests).toHaveLength(1);
    player.stop();
  });
});
