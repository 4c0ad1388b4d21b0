/**
 * Test support: a scripted in-memory service stub for unit tests, and event
 * helpers for driving the DOM the way a pointer would.
 */

import type { CanvasKind, MutationResult, ProjectState } from "../src/api.js";

export function baseState(overrides: Partial<ProjectState> = {}): ProjectState {
  return {
    name: "demo",
    canvas_type: "free",
    rows: 8,
    cols: 8,
    height_nm: 3.0,
    width_nm: 7.0,
    seed: 1,
    params: {
      d_min: 4,
      gc_min: 0.4,
      gc_max: 0.6,
      max_run: 3,
      kmer_ban: 7,
      max_attempts: 10000,
    },
    selection: [],
    draw_dirty: false,
    brick_dirty: false,
    ...overrides,
  };
}

/**
 * Minimal stand-in for the service: tracks selection and dirty flags with
 * the same observable behavior the real endpoints have, and records every
 * request plus how many were in flight at once.
 */
export class FakeService {
  state: ProjectState;
  requests: { method: string; path: string; body: unknown }[] = [];
  inFlight = 0;
  maxInFlight = 0;
  delayMs = 0;

  constructor(state: ProjectState = baseState()) {
    this.state = state;
  }

  private mutation(): MutationResult {
    return {
      selection: this.state.selection.map((item) => [...item]),
      draw_dirty: this.state.draw_dirty,
      brick_dirty: this.state.brick_dirty,
    };
  }

  private selKeys(): Set<string> {
    return new Set(this.state.selection.map((i) => i.join(",")));
  }

  private setSelection(keys: Set<string>): void {
    this.state.selection = [...keys]
      .map((k) => k.split(",").map(Number))
      .sort((a, b) => a[0] - b[0] || a[1] - b[1] || (a[2] ?? 0) - (b[2] ?? 0) || (a[3] ?? 0) - (b[3] ?? 0));
  }

  fetch = async (input: string | URL | Request, init?: RequestInit): Promise<Response> => {
    const path = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, path, body });
    this.inFlight += 1;
    this.maxInFlight = Math.max(this.maxInFlight, this.inFlight);
    if (this.delayMs > 0) {
      await new Promise((r) => setTimeout(r, this.delayMs));
    }
    try {
      return this.route(method, path, body);
    } finally {
      this.inFlight -= 1;
    }
  };

  private respond(payload: unknown, status = 200): Response {
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }

  private route(method: string, path: string, body: any): Response {
    if (method === "GET" && path === "/projects") {
      return this.respond({ projects: [this.state.name] });
    }
    if (method === "GET" && path === `/projects/${this.state.name}`) {
      return this.respond(this.state);
    }
    if (method === "POST" && path.endsWith("/strokes")) {
      const keys = this.selKeys();
      const line = this.strokeItems(body.p0, body.p1);
      for (const item of line) {
        if (body.mode === "deselect") {
          keys.delete(item);
        } else {
          keys.add(item);
        }
      }
      this.setSelection(keys);
      this.state.draw_dirty = true;
      return this.respond(this.mutation());
    }
    if (method === "POST" && path.endsWith("/toggle")) {
      const keys = this.selKeys();
      const key = (body.cell ?? body.segment).join(",");
      if (keys.has(key)) {
        keys.delete(key);
      } else {
        keys.add(key);
      }
      this.setSelection(keys);
      this.state.draw_dirty = true;
      return this.respond(this.mutation());
    }
    if (method === "POST" && path.endsWith("/clear")) {
      this.state.selection = [];
      this.state.draw_dirty = true;
      return this.respond(this.mutation());
    }
    if (method === "PUT" && path.endsWith("/dims")) {
      if (body.height <= 0 || body.width <= 0) {
        return this.respond(
          { error: { code: "NonPositiveDimension", message: "bad dims" } },
          400,
        );
      }
      const height = Math.max(1, Math.floor(body.height / 0.6 + 0.5)) * 0.6;
      const width = Math.max(1, Math.floor(body.width / 1.75 + 0.5)) * 1.75;
      const adjusted =
        Math.abs(height - body.height) > 1e-9 || Math.abs(width - body.width) > 1e-9;
      if (height !== this.state.height_nm || width !== this.state.width_nm) {
        this.state.brick_dirty = true;
      }
      this.state.height_nm = height;
      this.state.width_nm = width;
      return this.respond({
        height,
        width,
        adjusted,
        total_nt: 42,
        brick_dirty: this.state.brick_dirty,
      });
    }
    if (method === "PUT" && path.endsWith("/canvas")) {
      this.state.canvas_type = body.type as CanvasKind;
      this.state.selection = [];
      this.state.draw_dirty = true;
      return this.respond(this.state);
    }
    if (method === "POST" && path.endsWith("/design")) {
      if (this.state.selection.length === 0) {
        return this.respond(
          { error: { code: "EmptySelection", message: "nothing drawn" } },
          422,
        );
      }
      this.state.brick_dirty = true;
      return this.respond({
        shape_hash: "cafe01234567",
        canvas_type: this.state.canvas_type,
        seed: body?.seed ?? this.state.seed,
        strands: this.state.selection.length,
        bonds: 3,
        total_nt: 42 * this.state.selection.length,
        full_tiles: 0,
        half_tiles: this.state.selection.length,
        sticky_ends: 2,
        draw_dirty: this.state.draw_dirty,
        brick_dirty: this.state.brick_dirty,
      });
    }
    if (method === "POST" && path.endsWith("/save")) {
      this.state.draw_dirty = false;
      this.state.brick_dirty = false;
      return this.respond({
        paths: {},
        draw_dirty: false,
        brick_dirty: false,
      });
    }
    return this.respond({ error: { code: "NotFound", message: path } }, 404);
  }

  /** Straight-line keys between two points, endpoints included. */
  private strokeItems(p0: number[], p1: number[]): string[] {
    if (this.state.canvas_type === "free") {
      // follows the major axis one step at a time, like the server brush
      const out: string[] = [];
      let [r, c] = p0;
      out.push(`${r},${c}`);
      while (r !== p1[0] || c !== p1[1]) {
        if (Math.abs(p1[0] - r) >= Math.abs(p1[1] - c)) {
          r += Math.sign(p1[0] - r);
        } else {
          c += Math.sign(p1[1] - c);
        }
        out.push(`${r},${c}`);
      }
      return out;
    }
    // digitized: horizontal leg then vertical leg, axis-aligned unit segments
    const out: string[] = [];
    let [x, y] = p0;
    while (x !== p1[0]) {
      const nx = x + Math.sign(p1[0] - x);
      out.push([Math.min(x, nx), y, Math.max(x, nx), y].join(","));
      x = nx;
    }
    while (y !== p1[1]) {
      const ny = y + Math.sign(p1[1] - y);
      out.push([x, Math.min(y, ny), x, Math.max(y, ny)].join(","));
      y = ny;
    }
    return out;
  }
}

export function mouse(el: Element, type: string): void {
  el.dispatchEvent(new MouseEvent(type, { bubbles: true }));
}

export function cellAt(root: ParentNode, r: number, c: number): HTMLElement {
  const el = root.querySelector(`[data-r="${r}"][data-c="${c}"]`);
  if (!el) {
    throw new Error(`no cell ${r},${c}`);
  }
  return el as HTMLElement;
}

export function nodeAt(root: ParentNode, x: number, y: number): HTMLElement {
  const el = root.querySelector(`[data-x="${x}"][data-y="${y}"]`);
  if (!el) {
    throw new Error(`no node ${x},${y}`);
  }
  return el as HTMLElement;
}

/** mousedown on from, mouseover across the path, mouseup on the last one. */
export function drag(path: Element[]): void {
  mouse(path[0], "mousedown");
  for (const el of path.slice(1)) {
    mouse(el, "mouseover");
  }
  mouse(path[path.length - 1], "mouseup");
}

export function click(el: Element): void {
  mouse(el, "mousedown");
  mouse(el, "mouseup");
  mouse(el, "click");
}
