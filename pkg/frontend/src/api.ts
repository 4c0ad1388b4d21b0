/**
 * Typed fetch wrappers over the design service JSON API.
 *
 * All sequence and count data shown in the UI comes from these responses;
 * the client never computes any of it locally.
 */

export type CanvasKind = "free" | "digitized";
export type StrokeMode = "select" | "deselect";

export interface ConstraintParams {
  d_min: number;
  gc_min: number;
  gc_max: number;
  max_run: number;
  kmer_ban: number | null;
  max_attempts: number;
}

export interface ProjectState {
  name: string;
  canvas_type: CanvasKind;
  rows: number;
  cols: number;
  height_nm: number;
  width_nm: number;
  seed: number;
  params: ConstraintParams;
  selection: number[][];
  draw_dirty: boolean;
  brick_dirty: boolean;
}

export interface MutationResult {
  selection: number[][];
  draw_dirty: boolean;
  brick_dirty: boolean;
}

export interface DimsResult {
  height: number;
  width: number;
  adjusted: boolean;
  total_nt: number;
  brick_dirty: boolean;
}

export interface DesignSummary {
  shape_hash: string;
  canvas_type: CanvasKind;
  seed: number;
  strands: number;
  bonds: number;
  total_nt: number;
  full_tiles: number;
  half_tiles: number;
  sticky_ends: number;
  draw_dirty: boolean;
  brick_dirty: boolean;
}

export interface SaveResult {
  paths: Record<string, string>;
  draw_dirty: boolean;
  brick_dirty: boolean;
}

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  const body = await resp.json();
  if (!resp.ok) {
    const err = body && body.error ? body.error : {};
    throw new ApiError(err.code ?? "Unknown", err.message ?? resp.statusText, resp.status);
  }
  return body as T;
}

/**
 * Runs async jobs strictly one at a time, in submission order. Every
 * mutating request goes through one of these so the client never has more
 * than a single mutation in flight per project.
 */
export class MutationQueue {
  private tail: Promise<unknown> = Promise.resolve();
  private waiting = 0;

  get pending(): number {
    return this.waiting;
  }

  run<T>(job: () => Promise<T>): Promise<T> {
    this.waiting += 1;
    const next = this.tail.then(job, job);
    this.tail = next.catch(() => undefined).then(() => {
      this.waiting -= 1;
    });
    return next;
  }

  /** Resolves once everything queued so far has settled. */
  async idle(): Promise<void> {
    while (this.waiting > 0) {
      await this.tail;
    }
  }
}

export class Api {
  readonly queue = new MutationQueue();

  constructor(private base = "") {}

  private url(path: string): string {
    return this.base + path;
  }

  private get<T>(path: string): Promise<T> {
    return fetch(this.url(path)).then((r) => asJson<T>(r));
  }

  private send<T>(method: string, path: string, body?: unknown): Promise<T> {
    return this.queue.run(() =>
      fetch(this.url(path), {
        method,
        headers: { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      }).then((r) => asJson<T>(r)),
    );
  }

  listProjects(): Promise<{ projects: string[] }> {
    return this.get("/projects");
  }

  createProject(
    name: string,
    canvasType: CanvasKind = "free",
    rows = 64,
    cols = 64,
  ): Promise<ProjectState> {
    return this.send("POST", "/projects", {
      name,
      canvas_type: canvasType,
      rows,
      cols,
    });
  }

  getState(name: string): Promise<ProjectState> {
    return this.get(`/projects/${name}`);
  }

  stroke(
    name: string,
    p0: [number, number],
    p1: [number, number],
    mode: StrokeMode = "select",
  ): Promise<MutationResult> {
    return this.send("POST", `/projects/${name}/strokes`, { p0, p1, mode });
  }

  toggleCell(name: string, cell: [number, number]): Promise<MutationResult> {
    return this.send("POST", `/projects/${name}/toggle`, { cell });
  }

  toggleSegment(
    name: string,
    segment: [number, number, number, number],
  ): Promise<MutationResult> {
    return this.send("POST", `/projects/${name}/toggle`, { segment });
  }

  clear(name: string): Promise<MutationResult> {
    return this.send("POST", `/projects/${name}/clear`);
  }

  setDims(name: string, height: number, width: number): Promise<DimsResult> {
    return this.send("PUT", `/projects/${name}/dims`, { height, width });
  }

  setCanvas(
    name: string,
    type: CanvasKind,
    rows?: number,
    cols?: number,
  ): Promise<ProjectState> {
    return this.send("PUT", `/projects/${name}/canvas`, { type, rows, cols });
  }

  design(name: string, seed?: number): Promise<DesignSummary> {
    return this.send("POST", `/projects/${name}/design`, seed === undefined ? {} : { seed });
  }

  save(name: string): Promise<SaveResult> {
    return this.send("POST", `/projects/${name}/save`);
  }

  exportUrl(name: string, kind: "dnadata" | "detailed" | "pdf" | "svg"): string {
    return this.url(`/projects/${name}/export/${kind}`);
  }
}
