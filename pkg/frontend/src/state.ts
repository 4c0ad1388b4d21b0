/**
 * Client-side mirror of one open project.
 *
 * The mirror is only ever overwritten from acknowledged server responses,
 * so after any settled mutation it matches GET /projects/{name} exactly.
 */

import type { DesignSummary, MutationResult, ProjectState } from "./api.js";

export class UiState {
  project: ProjectState;
  lastDesign: DesignSummary | null = null;

  constructor(initial: ProjectState) {
    this.project = initial;
  }

  get name(): string {
    return this.project.name;
  }

  get dirty(): boolean {
    return this.project.draw_dirty || this.project.brick_dirty;
  }

  /** Selection as a set of "a,b" / "x1,y1,x2,y2" keys for O(1) lookups. */
  get selectionKeys(): Set<string> {
    return new Set(this.project.selection.map((item) => item.join(",")));
  }

  replace(state: ProjectState): void {
    this.project = state;
  }

  applyMutation(result: MutationResult): void {
    this.project.selection = result.selection;
    this.project.draw_dirty = result.draw_dirty;
    this.project.brick_dirty = result.brick_dirty;
  }

  applyDims(height: number, width: number, brickDirty: boolean): void {
    this.project.height_nm = height;
    this.project.width_nm = width;
    this.project.brick_dirty = brickDirty;
  }

  applyDesign(summary: DesignSummary): void {
    this.lastDesign = summary;
    this.project.seed = summary.seed;
    this.project.draw_dirty = summary.draw_dirty;
    this.project.brick_dirty = summary.brick_dirty;
  }

  applySave(drawDirty: boolean, brickDirty: boolean): void {
    this.project.draw_dirty = drawDirty;
    this.project.brick_dirty = brickDirty;
  }
}
