import { ApiClient, ConflictError } from "./api.js";
import {
  ViewerState,
  initialState,
  nextInstance,
  previousInstance,
  selectInstance,
  setSelection,
  setZoom,
  withDocument,
  withNotice,
} from "./state.js";
import type { Selection } from "./types.js";

/**
 * Binds viewer state to the document service.
 *
 * Edits are optimistic: the local document is updated first, then the write
 * goes out quoting the revision it was based on. On a conflict the local
 * state is thrown away and reloaded from the server, so at most the one
 * unacknowledged write is ever lost.
 */
export class ViewerController {
  state: ViewerState = initialState();

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: (state: ViewerState) => void = () => {},
  ) {}

  private commit(state: ViewerState): void {
    this.state = state;
    this.onChange(state);
  }

  async load(docId: string): Promise<void> {
    const doc = await this.api.getDocument(docId);
    this.commit(withDocument(initialState(), doc));
  }

  async reload(): Promise<void> {
    if (!this.state.doc) {
      return;
    }
    const doc = await this.api.getDocument(this.state.doc.id);
    this.commit(withDocument(this.state, doc));
  }

  navigate(target: number): void {
    this.commit(selectInstance(this.state, target));
  }

  next(): void {
    this.commit(nextInstance(this.state));
  }

  previous(): void {
    this.commit(previousInstance(this.state));
  }

  zoom(scale: number): void {
    this.commit(setZoom(this.state, scale));
  }

  select(selection: Selection): void {
    this.commit(setSelection(this.state, selection));
  }

  private async write(mutateLocal: (doc: NonNullable<ViewerState["doc"]>) => void,
                      send: (revision: number) => Promise<{ revision: number }>): Promise<boolean> {
    const doc = this.state.doc;
    if (!doc) {
      return false;
    }
    const base = doc.revision;
    const optimistic = structuredClone(doc);
    mutateLocal(optimistic);
    this.commit(withDocument(this.state, optimistic));
    try {
      const ack = await send(base);
      optimistic.revision = ack.revision;
      this.commit(withDocument(this.state, optimistic));
      return true;
    } catch (err) {
      if (err instanceof ConflictError) {
        const fresh = await this.api.getDocument(doc.id);
        this.commit(withNotice(withDocument(this.state, fresh),
          "Document changed elsewhere; reloaded."));
        return false;
      }
      await this.reload();
      throw err;
    }
  }

  /** Drag: move a vertex of the selected instance to (x, y). */
  dragVertex(vertexId: string, x: number, y: number): Promise<boolean> {
    const instance = this.state.selectedInstance;
    return this.write(
      (doc) => {
        const vertex = doc.instances[instance].vertices[vertexId];
        if (vertex) {
          vertex.x = x;
          vertex.y = y;
        }
      },
      (revision) => this.api.putPosition(this.state.doc!.id, instance, vertexId, x, y, revision),
    );
  }

  addVertex(vertexId: string, x: number, y: number): Promise<boolean> {
    const instance = this.state.selectedInstance;
    return this.write(
      (doc) => {
        doc.instances[instance].vertices[vertexId] = { x, y, attributes: {} };
      },
      (revision) => this.api.addVertex(this.state.doc!.id, instance, vertexId, x, y, revision),
    );
  }

  /** Add an edge in the selected instance only. */
  addEdge(source: string, target: string, weight = 1.0): Promise<boolean> {
    const instance = this.state.selectedInstance;
    return this.write(
      (doc) => {
        doc.instances[instance].edges.push({ source, target, weight, attributes: {} });
      },
      (revision) => this.api.addEdge(this.state.doc!.id, instance, source, target, weight, revision),
    );
  }

  /** Append a new empty instance; the navigator grows by one. */
  addInstance(timestamp?: number | string): Promise<boolean> {
    return this.write(
      (doc) => {
        const index = doc.instances.length;
        const last = doc.instances[index - 1];
        doc.instances.push({
          index,
          timestamp: timestamp ?? (typeof last?.timestamp === "number" ? last.timestamp + 1 : index),
          vertices: {},
          edges: [],
        });
      },
      (revision) => this.api.addInstance(this.state.doc!.id, revision, timestamp),
    );
  }

  async save(): Promise<void> {
    if (this.state.doc) {
      await this.api.save(this.state.doc.id);
    }
  }
}
