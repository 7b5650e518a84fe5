import type { EdgePayload, FramePoint } from "./types.js";

/** Subset of CanvasRenderingContext2D the renderer needs; tests stub it. */
export interface DrawContext {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
  save(): void;
  restore(): void;
  scale(x: number, y: number): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  textAlign: string;
}

export interface RenderOptions {
  width: number;
  height: number;
  zoom: number;
  /** Vertex ids drawn in the selection color. */
  selected?: Set<string>;
  /** Labels appear only when zoomed in at least this much. */
  labelZoomThreshold?: number;
}

export const VERTEX_RADIUS = 6;
export const EDGE_COLOR = "#9aa5b1";
export const SELECT_COLOR = "#cc2222";
export const LABEL_ZOOM_THRESHOLD = 1.5;

/** Stable per-id color so a vertex keeps its hue across instances and frames. */
export function vertexColor(id: string): string {
  let hash = 2166136261;
  for (let i = 0; i < id.length; i++) {
    hash = (hash ^ id.charCodeAt(i)) * 16777619;
    hash >>>= 0;
  }
  return `hsl(${hash % 360}, 55%, 45%)`;
}

/**
 * Draw one frame: edges under vertices, selection highlighted, labels when
 * zoomed in. Only edges with both endpoints present are drawn, which is
 * what makes fade-in/out frames render cleanly.
 */
export function renderFrame(ctx: DrawContext, positions: Record<string, FramePoint>,
                            edges: EdgePayload[], options: RenderOptions): void {
  ctx.save();
  ctx.clearRect(0, 0, options.width, options.height);
  ctx.scale(options.zoom, options.zoom);
  ctx.strokeStyle = EDGE_COLOR;
  ctx.lineWidth = 1;
  for (const edge of edges) {
    const a = positions[edge.source];
    const b = positions[edge.target];
    if (!a || !b) {
      continue;
    }
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
  }
  const threshold = options.labelZoomThreshold ?? LABEL_ZOOM_THRESHOLD;
  const ids = Object.keys(positions).sort();
  for (const id of ids) {
    const p = positions[id];
    ctx.beginPath();
    ctx.arc(p.x, p.y, VERTEX_RADIUS, 0, Math.PI * 2);
    ctx.fillStyle = options.selected?.has(id) ? SELECT_COLOR : vertexColor(id);
    ctx.fill();
    if (options.zoom >= threshold) {
      ctx.fillStyle = "#222";
      ctx.font = "10px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(id, p.x, p.y - VERTEX_RADIUS - 3);
    }
  }
  ctx.restore();
}

/** Canvas pixel coordinates to model coordinates under the current zoom. */
export function toModel(x: number, y: number, zoom: number): FramePoint {
  return { x: x / zoom, y: y / zoom };
}

/** Nearest vertex within the hit radius, or null. */
export function hitTest(positions: Record<string, FramePoint>, x: number, y: number,
                        radius = VERTEX_RADIUS + 3): string | null {
  let best: string | null = null;
  let bestDist = radius;
  for (const id of Object.keys(positions).sort()) {
    const p = positions[id];
    const d = Math.hypot(p.x - x, p.y - y);
    if (d <= bestDist) {
      best = id;
      bestDist = d;
    }
  }
  return best;
}
