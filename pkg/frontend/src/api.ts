import type { DocumentPayload, DocumentSummary, FramesPayload } from "./types.js";

/** A write raced another writer; reload and retry from fresh state. */
export class ConflictError extends Error {
  constructor(message = "document revision conflict") {
    super(message);
    this.name = "ConflictError";
  }
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * Typed client for the document service. Every mutation quotes the
 * revision it was computed against; a 409 surfaces as ConflictError so the
 * caller can reload, a 423 (layout job running) as ApiError.
 */
export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    if (response.status === 409) {
      throw new ConflictError();
    }
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return (await response.json()) as T;
  }

  listDocuments(): Promise<DocumentSummary[]> {
    return this.request("GET", "/api/docs");
  }

  getDocument(id: string): Promise<DocumentPayload> {
    return this.request("GET", `/api/docs/${encodeURIComponent(id)}`);
  }

  putPosition(id: string, instance: number, vertexId: string,
              x: number, y: number, revision: number): Promise<{ revision: number }> {
    const path = `/api/docs/${encodeURIComponent(id)}/instances/${instance}` +
      `/vertices/${encodeURIComponent(vertexId)}/position`;
    return this.request("PUT", path, { x, y, revision });
  }

  addVertex(id: string, instance: number, vertexId: string,
            x: number, y: number, revision: number): Promise<{ revision: number }> {
    return this.request("POST", `/api/docs/${encodeURIComponent(id)}/vertices`,
      { instance, id: vertexId, x, y, revision });
  }

  addEdge(id: string, instance: number, source: string, target: string,
          weight: number, revision: number): Promise<{ revision: number }> {
    return this.request("POST", `/api/docs/${encodeURIComponent(id)}/edges`,
      { instance, source, target, weight, revision });
  }

  addInstance(id: string, revision: number,
              timestamp?: number | string): Promise<{ revision: number; instances: number }> {
    return this.request("POST", `/api/docs/${encodeURIComponent(id)}/instances`,
      { timestamp: timestamp ?? null, revision });
  }

  getFrames(id: string, from: number, steps: number): Promise<FramesPayload> {
    const path = `/api/docs/${encodeURIComponent(id)}/frames?from=${from}&steps=${steps}`;
    return this.request("GET", path);
  }

  runLayout(id: string, algorithm: string, config: Record<string, unknown>,
            revision: number): Promise<{ revision: number }> {
    return this.request("POST", `/api/docs/${encodeURIComponent(id)}/layout`,
      { algorithm, config, revision });
  }

  save(id: string): Promise<{ revision: number; path: string }> {
    return this.request("POST", `/api/docs/${encodeURIComponent(id)}/save`);
  }
}
