/**
 * DOM rendering and pointer wiring for the two canvas types.
 *
 * The free canvas is a staggered brick wall: odd rows are shifted east by
 * half a brick width, matching the lattice the service designs against.
 * The digitized canvas is a grid of nodes; selected unit segments are drawn
 * between them. Both render purely from the server-fed selection mirror.
 */

import type { StrokeMode } from "./api.js";
import type { UiState } from "./state.js";

export interface DrawHandlers {
  stroke(p0: [number, number], p1: [number, number], mode: StrokeMode): void;
  toggleCell(cell: [number, number]): void;
  toggleSegment(segment: [number, number, number, number]): void;
}

const CELL = 22; // px per brick column / node pitch

function cellOf(target: EventTarget | null): [number, number] | null {
  if (!(target instanceof Element)) {
    return null;
  }
  const el = target.closest("[data-r]");
  if (!(el instanceof HTMLElement) || el.dataset.r === undefined) {
    return null;
  }
  return [Number(el.dataset.r), Number(el.dataset.c)];
}

function nodeOf(target: EventTarget | null): [number, number] | null {
  if (!(target instanceof Element)) {
    return null;
  }
  const el = target.closest("[data-x]");
  if (!(el instanceof HTMLElement) || el.dataset.x === undefined) {
    return null;
  }
  return [Number(el.dataset.x), Number(el.dataset.y)];
}

export class FreeCanvas {
  private built = "";
  private dragFrom: [number, number] | null = null;
  private dragMode: StrokeMode = "select";
  private moved = false;

  constructor(
    private container: HTMLElement,
    private handlers: DrawHandlers,
  ) {
    container.addEventListener("mousedown", (e) => this.onDown(e));
    container.addEventListener("mouseover", (e) => this.onOver(e));
    container.addEventListener("mouseup", (e) => this.onUp(e));
  }

  render(state: UiState): void {
    const { rows, cols } = state.project;
    const key = `${rows}x${cols}`;
    if (this.built !== key) {
      this.container.textContent = "";
      for (let r = 0; r < rows; r++) {
        const rowEl = this.container.ownerDocument.createElement("div");
        rowEl.className = "brick-row";
        if (r % 2 === 1) {
          rowEl.style.marginLeft = `${CELL / 2}px`;
        }
        for (let c = 0; c < cols; c++) {
          const cell = this.container.ownerDocument.createElement("div");
          cell.className = "brick";
          cell.dataset.r = String(r);
          cell.dataset.c = String(c);
          rowEl.appendChild(cell);
        }
        this.container.appendChild(rowEl);
      }
      this.built = key;
    }
    const keys = state.selectionKeys;
    for (const el of this.container.querySelectorAll<HTMLElement>(".brick")) {
      el.classList.toggle("selected", keys.has(`${el.dataset.r},${el.dataset.c}`));
    }
  }

  private onDown(event: MouseEvent): void {
    const cell = cellOf(event.target);
    if (!cell) {
      return;
    }
    this.dragFrom = cell;
    this.moved = false;
    const el = event.target instanceof Element ? event.target.closest(".brick") : null;
    this.dragMode = el && el.classList.contains("selected") ? "deselect" : "select";
  }

  private onOver(event: MouseEvent): void {
    if (!this.dragFrom) {
      return;
    }
    const cell = cellOf(event.target);
    if (!cell || (cell[0] === this.dragFrom[0] && cell[1] === this.dragFrom[1])) {
      return;
    }
    this.handlers.stroke(this.dragFrom, cell, this.dragMode);
    this.dragFrom = cell;
    this.moved = true;
  }

  private onUp(event: MouseEvent): void {
    if (this.dragFrom && !this.moved) {
      const cell = cellOf(event.target);
      if (cell) {
        this.handlers.toggleCell(cell);
      }
    }
    this.dragFrom = null;
    this.moved = false;
  }
}

export class DigitizedCanvas {
  private built = "";
  private anchor: [number, number] | null = null;

  constructor(
    private container: HTMLElement,
    private handlers: DrawHandlers,
  ) {
    container.addEventListener("mousedown", (e) => this.onDown(e));
    container.addEventListener("mouseover", (e) => this.onOver(e));
    container.addEventListener("mouseup", () => {
      this.anchor = null;
    });
    container.addEventListener("click", (e) => this.onClick(e));
  }

  render(state: UiState): void {
    const { rows, cols } = state.project;
    const doc = this.container.ownerDocument;
    const key = `${rows}x${cols}`;
    if (this.built !== key) {
      this.container.textContent = "";
      const nodes = doc.createElement("div");
      nodes.className = "node-layer";
      for (let y = 0; y < rows; y++) {
        for (let x = 0; x < cols; x++) {
          const dot = doc.createElement("div");
          dot.className = "node";
          dot.dataset.x = String(x);
          dot.dataset.y = String(y);
          dot.style.left = `${x * CELL}px`;
          dot.style.top = `${y * CELL}px`;
          nodes.appendChild(dot);
        }
      }
      const segments = doc.createElement("div");
      segments.className = "segment-layer";
      this.container.appendChild(segments);
      this.container.appendChild(nodes);
      this.built = key;
    }
    const layer = this.container.querySelector(".segment-layer") as HTMLElement;
    layer.textContent = "";
    for (const item of state.project.selection) {
      const [x1, y1, x2, y2] = item;
      const seg = doc.createElement("div");
      seg.className = "segment";
      seg.dataset.seg = item.join(",");
      seg.classList.add(x1 === x2 ? "vertical" : "horizontal");
      seg.style.left = `${Math.min(x1, x2) * CELL}px`;
      seg.style.top = `${Math.min(y1, y2) * CELL}px`;
      layer.appendChild(seg);
    }
  }

  private onDown(event: MouseEvent): void {
    const node = nodeOf(event.target);
    if (node) {
      this.anchor = node;
    }
  }

  private onOver(event: MouseEvent): void {
    if (!this.anchor) {
      return;
    }
    const node = nodeOf(event.target);
    if (!node || (node[0] === this.anchor[0] && node[1] === this.anchor[1])) {
      return;
    }
    this.handlers.stroke(this.anchor, node, "select");
    this.anchor = node;
  }

  private onClick(event: MouseEvent): void {
    if (!(event.target instanceof HTMLElement) || !event.target.dataset.seg) {
      return;
    }
    const [x1, y1, x2, y2] = event.target.dataset.seg.split(",").map(Number);
    this.handlers.toggleSegment([x1, y1, x2, y2]);
  }
}
