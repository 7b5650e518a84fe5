/** Payload shapes of the document service, mirrored field for field. */

export interface VertexPayload {
  x: number;
  y: number;
  attributes: Record<string, string>;
}

export interface EdgePayload {
  source: string;
  target: string;
  weight: number;
  attributes: Record<string, string>;
}

export interface InstancePayload {
  index: number;
  timestamp: number | string;
  vertices: Record<string, VertexPayload>;
  edges: EdgePayload[];
}

export interface DocumentPayload {
  id: string;
  revision: number;
  name: string;
  instances: InstancePayload[];
}

export interface DocumentSummary {
  id: string;
  name: string;
  revision: number;
  instances: number;
}

export interface FramePoint {
  x: number;
  y: number;
}

/** One interpolation frame: vertex id to position. */
export type Frame = Record<string, FramePoint>;

export interface FramesPayload {
  revision: number;
  from: number;
  steps: number;
  frames: Frame[];
}

export type Selection =
  | { kind: "vertex"; id: string }
  | { kind: "edge"; source: string; target: string }
  | null;
