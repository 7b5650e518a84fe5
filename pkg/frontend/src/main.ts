import { ApiClient } from "./api.js";
import { hitTest, renderFrame, toModel } from "./canvas.js";
import { ViewerController } from "./controller.js";
import { TransitionPlayer } from "./player.js";
import { restPositions } from "./state.js";
import type { FramePoint } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function setup(): void {
  const api = new ApiClient("");
  const canvas = el<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d")!;
  const docSelect = el<HTMLSelectElement>("doc-select");
  const navList = el<HTMLSelectElement>("instance-select");
  const noticeBox = el<HTMLDivElement>("notice");
  let liveFrame: Record<string, FramePoint> | null = null;

  const controller = new ViewerController(api, () => redraw());

  const player = new TransitionPlayer(api, {
    getState: () => controller.state,
    setPlayback: (playing, transition, frameIndex) => {
      controller.state.playback = {
        ...controller.state.playback, playing, transition, frameIndex,
      };
      syncButtons();
    },
    onFrame: (positions) => {
      liveFrame = positions;
      redraw();
    },
  });

  function currentPositions(): Record<string, FramePoint> {
    if (player.playing && liveFrame) {
      return liveFrame;
    }
    liveFrame = null;
    return restPositions(controller.state);
  }

  function redraw(): void {
    const state = controller.state;
    const edges = state.doc ? state.doc.instances[state.selectedInstance].edges : [];
    const selected = new Set<string>();
    if (state.selection?.kind === "vertex") {
      selected.add(state.selection.id);
    }
    renderFrame(ctx, currentPositions(), edges, {
      width: canvas.width,
      height: canvas.height,
      zoom: state.zoom,
      selected,
    });
    el<HTMLSpanElement>("instance-label").textContent = state.doc
      ? `instance ${state.selectedInstance + 1} / ${state.doc.instances.length}`
      : "no document";
    noticeBox.textContent = state.notice ?? "";
    syncNavigator();
    syncButtons();
  }

  function syncNavigator(): void {
    const state = controller.state;
    const count = state.doc ? state.doc.instances.length : 0;
    while (navList.options.length > count) {
      navList.remove(navList.options.length - 1);
    }
    while (navList.options.length < count) {
      const option = document.createElement("option");
      option.value = String(navList.options.length);
      option.textContent = `#${navList.options.length + 1}`;
      navList.add(option);
    }
    navList.value = String(state.selectedInstance);
  }

  function syncButtons(): void {
    const state = controller.state;
    const count = state.doc ? state.doc.instances.length : 0;
    el<HTMLButtonElement>("prev").disabled = state.selectedInstance <= 0;
    el<HTMLButtonElement>("next").disabled = state.selectedInstance >= count - 1;
    el<HTMLButtonElement>("play").disabled = count < 2 || player.playing;
    el<HTMLButtonElement>("stop").disabled = !player.playing;
  }

  async function refreshDocList(): Promise<void> {
    const docs = await api.listDocuments();
    docSelect.innerHTML = "";
    for (const doc of docs) {
      const option = document.createElement("option");
      option.value = doc.id;
      option.textContent = `${doc.name || doc.id} (${doc.instances})`;
      docSelect.add(option);
    }
    if (docs.length) {
      await controller.load(docs[0].id);
    }
  }

  docSelect.addEventListener("change", () => void controller.load(docSelect.value));
  el<HTMLButtonElement>("prev").addEventListener("click", () => controller.previous());
  el<HTMLButtonElement>("next").addEventListener("click", () => controller.next());
  navList.addEventListener("change", () => controller.navigate(Number(navList.value)));
  el<HTMLInputElement>("zoom").addEventListener("input", (event) => {
    controller.zoom(Number((event.target as HTMLInputElement).value));
  });
  el<HTMLButtonElement>("play").addEventListener("click", () => void player.start());
  el<HTMLButtonElement>("stop").addEventListener("click", () => player.stop());
  el<HTMLButtonElement>("save").addEventListener("click", () => void controller.save());

  el<HTMLButtonElement>("add-vertex").addEventListener("click", () => {
    const id = window.prompt("new vertex id");
    if (id) {
      void controller.addVertex(id, 100, 100);
    }
  });
  el<HTMLButtonElement>("add-edge").addEventListener("click", () => {
    const state = controller.state;
    if (state.selection?.kind === "vertex") {
      const target = window.prompt("edge to vertex id");
      if (target) {
        void controller.addEdge(state.selection.id, target);
      }
    }
  });
  el<HTMLButtonElement>("add-graph").addEventListener("click", () => {
    void controller.addInstance();
  });

  let dragging: string | null = null;
  canvas.addEventListener("mousedown", (event) => {
    const rect = canvas.getBoundingClientRect();
    const point = toModel(event.clientX - rect.left, event.clientY - rect.top,
      controller.state.zoom);
    const hit = hitTest(restPositions(controller.state), point.x, point.y);
    controller.select(hit ? { kind: "vertex", id: hit } : null);
    dragging = hit;
  });
  canvas.addEventListener("mousemove", (event) => {
    if (!dragging || !controller.state.doc) {
      return;
    }
    const rect = canvas.getBoundingClientRect();
    const point = toModel(event.clientX - rect.left, event.clientY - rect.top,
      controller.state.zoom);
    const inst = controller.state.doc.instances[controller.state.selectedInstance];
    const vertex = inst.vertices[dragging];
    if (vertex) {
      vertex.x = point.x;
      vertex.y = point.y;
      redraw();
    }
  });
  canvas.addEventListener("mouseup", (event) => {
    if (!dragging) {
      return;
    }
    const rect = canvas.getBoundingClientRect();
    const point = toModel(event.clientX - rect.left, event.clientY - rect.top,
      controller.state.zoom);
    void controller.dragVertex(dragging, point.x, point.y);
    dragging = null;
  });

  void refreshDocList();
}

window.addEventListener("DOMContentLoaded", setup);
