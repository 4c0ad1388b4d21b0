/**
 * Application shell: project picker, toolbar, dims editor, the two canvas
 * views and the unsaved-changes guards, all talking to the design service.
 */

import { Api, ApiError } from "./api.js";
import type { CanvasKind, StrokeMode } from "./api.js";
import { DigitizedCanvas, FreeCanvas } from "./canvas.js";
import type { DrawHandlers } from "./canvas.js";
import { UnloadGuard, askUnsaved } from "./guards.js";
import { UiState } from "./state.js";

function el(doc: Document, tag: string, className?: string, text?: string): HTMLElement {
  const node = doc.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text) {
    node.textContent = text;
  }
  return node;
}

export class App {
  state: UiState | null = null;
  readonly guard: UnloadGuard;

  private actions = new Set<Promise<unknown>>();
  private doc: Document;
  private freeCanvas: FreeCanvas;
  private digiCanvas: DigitizedCanvas;
  private els: {
    projectList: HTMLElement;
    nameInput: HTMLInputElement;
    typeSelect: HTMLSelectElement;
    freeHost: HTMLElement;
    digiHost: HTMLElement;
    heightInput: HTMLInputElement;
    widthInput: HTMLInputElement;
    seedInput: HTMLInputElement;
    dimsError: HTMLElement;
    dimsNotice: HTMLElement;
    preview: HTMLElement;
    summary: HTMLElement;
    status: HTMLElement;
    title: HTMLElement;
    exports: HTMLElement;
  };

  constructor(
    private root: HTMLElement,
    readonly api: Api,
    private win: Window,
  ) {
    this.doc = root.ownerDocument;
    this.els = this.buildLayout();
    const handlers: DrawHandlers = {
      stroke: (p0, p1, mode) => this.onStroke(p0, p1, mode),
      toggleCell: (cell) => this.onToggleCell(cell),
      toggleSegment: (seg) => this.onToggleSegment(seg),
    };
    this.freeCanvas = new FreeCanvas(this.els.freeHost, handlers);
    this.digiCanvas = new DigitizedCanvas(this.els.digiHost, handlers);
    this.guard = new UnloadGuard(() => this.state?.dirty ?? false);
    this.guard.install(win);
  }

  /** Tracks an in-progress user action so idle() can wait for it. */
  private track<T>(promise: Promise<T>): Promise<T> {
    this.actions.add(promise);
    promise.finally(() => this.actions.delete(promise)).catch(() => undefined);
    return promise;
  }

  /** Resolves when every started action and queued request has settled. */
  async idle(): Promise<void> {
    for (;;) {
      if (this.actions.size === 0 && this.api.queue.pending === 0) {
        return;
      }
      await Promise.allSettled([...this.actions]);
      await this.api.queue.idle();
      await new Promise((resolve) => setTimeout(resolve, 0));
    }
  }

  async start(): Promise<void> {
    const { projects } = await this.api.listProjects();
    this.renderProjectList(projects);
  }

  async open(name: string): Promise<void> {
    const state = await this.api.getState(name);
    this.state = new UiState(state);
    this.els.title.textContent = name;
    this.els.heightInput.value = String(state.height_nm);
    this.els.widthInput.value = String(state.width_nm);
    this.els.seedInput.value = String(state.seed);
    this.renderExports();
    this.renderPreview(state.height_nm, state.width_nm);
    this.renderCanvas();
  }

  async createProject(): Promise<void> {
    const name = this.els.nameInput.value.trim();
    const kind = this.els.typeSelect.value as CanvasKind;
    try {
      await this.api.createProject(name, kind);
      await this.start();
      await this.open(name);
      this.setStatus(`created ${name}`);
    } catch (err) {
      this.showError(err);
    }
  }

  async switchCanvas(kind: CanvasKind): Promise<void> {
    const state = this.state;
    if (!state || state.project.canvas_type === kind) {
      return;
    }
    const choice = await askUnsaved(
      this.doc,
      state.dirty,
      "Save the draw data before switching canvases?",
    );
    if (choice === "cancel") {
      return;
    }
    try {
      if (choice === "save") {
        const saved = await this.api.save(state.name);
        state.applySave(saved.draw_dirty, saved.brick_dirty);
      }
      state.replace(await this.api.setCanvas(state.name, kind));
      this.renderCanvas();
      this.setStatus(`switched to the ${kind} canvas`);
    } catch (err) {
      this.showError(err);
    }
  }

  async applyDims(): Promise<void> {
    const state = this.state;
    if (!state) {
      return;
    }
    this.els.dimsError.textContent = "";
    this.els.dimsNotice.textContent = "";
    const height = Number(this.els.heightInput.value);
    const width = Number(this.els.widthInput.value);
    if (!Number.isFinite(height) || !Number.isFinite(width) || height <= 0 || width <= 0) {
      this.els.dimsError.textContent = "Brick dimensions must be positive numbers.";
      return;
    }
    const choice = await askUnsaved(
      this.doc,
      state.project.draw_dirty,
      "Save the draw data before changing brick dimensions?",
    );
    if (choice === "cancel") {
      return;
    }
    try {
      if (choice === "save") {
        const saved = await this.api.save(state.name);
        state.applySave(saved.draw_dirty, saved.brick_dirty);
      }
      const result = await this.api.setDims(state.name, height, width);
      state.applyDims(result.height, result.width, result.brick_dirty);
      this.els.heightInput.value = String(result.height);
      this.els.widthInput.value = String(result.width);
      if (result.adjusted) {
        this.els.dimsNotice.textContent = `adjusted to ${result.height} × ${result.width}`;
      }
      this.renderPreview(result.height, result.width);
      this.setStatus(`brick set to ${result.height} × ${result.width} nm, ${result.total_nt} nt`);
    } catch (err) {
      this.showError(err);
    }
  }

  async runDesign(): Promise<void> {
    const state = this.state;
    if (!state) {
      return;
    }
    const seed = Number(this.els.seedInput.value);
    try {
      const summary = await this.api.design(
        state.name,
        Number.isInteger(seed) ? seed : undefined,
      );
      state.applyDesign(summary);
      this.renderSummary();
      this.setStatus(`designed ${summary.strands} strands`);
    } catch (err) {
      this.showError(err);
    }
  }

  async saveProject(): Promise<void> {
    const state = this.state;
    if (!state) {
      return;
    }
    try {
      const saved = await this.api.save(state.name);
      state.applySave(saved.draw_dirty, saved.brick_dirty);
      this.setStatus("saved");
    } catch (err) {
      this.showError(err);
    }
  }

  async clearSelection(): Promise<void> {
    const state = this.state;
    if (!state || !this.win.confirm("Clear the whole selection?")) {
      return;
    }
    try {
      state.applyMutation(await this.api.clear(state.name));
      this.renderCanvas();
    } catch (err) {
      this.showError(err);
    }
  }

  // --- pointer plumbing ---------------------------------------------------

  private onStroke(p0: [number, number], p1: [number, number], mode: StrokeMode): void {
    const state = this.state;
    if (!state) {
      return;
    }
    this.track(
      this.api
        .stroke(state.name, p0, p1, mode)
        .then((result) => {
          state.applyMutation(result);
          this.renderCanvas();
        })
        .catch((err) => this.showError(err)),
    );
  }

  private onToggleCell(cell: [number, number]): void {
    const state = this.state;
    if (!state) {
      return;
    }
    this.track(
      this.api
        .toggleCell(state.name, cell)
        .then((result) => {
          state.applyMutation(result);
          this.renderCanvas();
        })
        .catch((err) => this.showError(err)),
    );
  }

  private onToggleSegment(segment: [number, number, number, number]): void {
    const state = this.state;
    if (!state) {
      return;
    }
    this.track(
      this.api
        .toggleSegment(state.name, segment)
        .then((result) => {
          state.applyMutation(result);
          this.renderCanvas();
        })
        .catch((err) => this.showError(err)),
    );
  }

  // --- rendering ------------------------------------------------------------

  private renderCanvas(): void {
    const state = this.state;
    if (!state) {
      return;
    }
    const free = state.project.canvas_type === "free";
    this.els.freeHost.classList.toggle("hidden", !free);
    this.els.digiHost.classList.toggle("hidden", free);
    if (free) {
      this.freeCanvas.render(state);
    } else {
      this.digiCanvas.render(state);
    }
  }

  private renderProjectList(names: string[]): void {
    this.els.projectList.textContent = "";
    for (const name of names) {
      const button = el(this.doc, "button", "project-link", name) as HTMLButtonElement;
      button.dataset.project = name;
      button.addEventListener("click", () => {
        void this.track(this.open(name));
      });
      this.els.projectList.appendChild(button);
    }
  }

  private renderSummary(): void {
    const summary = this.state?.lastDesign;
    this.els.summary.textContent = "";
    if (!summary) {
      return;
    }
    const rows: [string, string][] = [
      ["shape hash", summary.shape_hash],
      ["strands", String(summary.strands)],
      ["bonds", String(summary.bonds)],
      ["total nt", String(summary.total_nt)],
      ["full tiles", String(summary.full_tiles)],
      ["half tiles", String(summary.half_tiles)],
      ["sticky ends", String(summary.sticky_ends)],
    ];
    for (const [label, value] of rows) {
      const line = el(this.doc, "div", "summary-row");
      line.appendChild(el(this.doc, "span", "summary-label", label));
      const v = el(this.doc, "span", "summary-value", value);
      v.dataset.field = label.replace(/ /g, "-");
      line.appendChild(v);
      this.els.summary.appendChild(line);
    }
  }

  private renderExports(): void {
    const state = this.state;
    this.els.exports.textContent = "";
    if (!state) {
      return;
    }
    for (const kind of ["dnadata", "detailed", "pdf", "svg"] as const) {
      const link = el(this.doc, "a", "export-link", kind) as HTMLAnchorElement;
      link.href = this.api.exportUrl(state.name, kind);
      link.dataset.kind = kind;
      this.els.exports.appendChild(link);
    }
  }

  private renderPreview(height: number, width: number): void {
    // one parametric sample brick, 12 px per nm
    this.els.preview.style.width = `${Math.round(width * 12)}px`;
    this.els.preview.style.height = `${Math.round(height * 12)}px`;
  }

  private setStatus(message: string): void {
    this.els.status.textContent = message;
    this.els.status.classList.remove("error");
  }

  private showError(err: unknown): void {
    const text =
      err instanceof ApiError
        ? `${err.code}: ${err.message}`
        : err instanceof Error
          ? err.message
          : String(err);
    this.els.status.textContent = text;
    this.els.status.classList.add("error");
  }

  // --- layout ----------------------------------------------------------------

  private buildLayout() {
    const doc = this.doc;
    this.root.textContent = "";

    const sidebar = el(doc, "div", "sidebar");
    sidebar.appendChild(el(doc, "h2", "", "Projects"));
    const projectList = el(doc, "div", "project-list");
    sidebar.appendChild(projectList);
    const nameInput = el(doc, "input") as HTMLInputElement;
    nameInput.id = "new-name";
    nameInput.placeholder = "project name";
    const typeSelect = el(doc, "select") as HTMLSelectElement;
    typeSelect.id = "new-type";
    for (const kind of ["free", "digitized"]) {
      const opt = doc.createElement("option");
      opt.value = kind;
      opt.textContent = kind;
      typeSelect.appendChild(opt);
    }
    const createBtn = el(doc, "button", "", "Create") as HTMLButtonElement;
    createBtn.id = "btn-create";
    createBtn.addEventListener("click", () => {
      void this.track(this.createProject());
    });
    sidebar.append(nameInput, typeSelect, createBtn);

    const mainArea = el(doc, "div", "main");
    const title = el(doc, "h2", "project-title", "no project open");
    mainArea.appendChild(title);

    const toolbar = el(doc, "div", "toolbar");
    const freeBtn = el(doc, "button", "", "Free canvas") as HTMLButtonElement;
    freeBtn.id = "btn-free";
    freeBtn.addEventListener("click", () => {
      void this.track(this.switchCanvas("free"));
    });
    const digiBtn = el(doc, "button", "", "Digitized canvas") as HTMLButtonElement;
    digiBtn.id = "btn-digitized";
    digiBtn.addEventListener("click", () => {
      void this.track(this.switchCanvas("digitized"));
    });
    const clearBtn = el(doc, "button", "", "Clear") as HTMLButtonElement;
    clearBtn.id = "btn-clear";
    clearBtn.addEventListener("click", () => {
      void this.track(this.clearSelection());
    });
    const designBtn = el(doc, "button", "", "Design") as HTMLButtonElement;
    designBtn.id = "btn-design";
    designBtn.addEventListener("click", () => {
      void this.track(this.runDesign());
    });
    const saveBtn = el(doc, "button", "", "Save") as HTMLButtonElement;
    saveBtn.id = "btn-save";
    saveBtn.addEventListener("click", () => {
      void this.track(this.saveProject());
    });
    const seedInput = el(doc, "input") as HTMLInputElement;
    seedInput.id = "seed-input";
    seedInput.type = "number";
    seedInput.value = "1";
    toolbar.append(freeBtn, digiBtn, clearBtn, designBtn, saveBtn, seedInput);
    mainArea.appendChild(toolbar);

    const dims = el(doc, "div", "dims-editor");
    const heightInput = el(doc, "input") as HTMLInputElement;
    heightInput.id = "dims-height";
    heightInput.type = "number";
    const widthInput = el(doc, "input") as HTMLInputElement;
    widthInput.id = "dims-width";
    widthInput.type = "number";
    const dimsBtn = el(doc, "button", "", "Apply dims") as HTMLButtonElement;
    dimsBtn.id = "btn-dims";
    dimsBtn.addEventListener("click", () => {
      void this.track(this.applyDims());
    });
    const dimsError = el(doc, "span", "dims-error");
    dimsError.id = "dims-error";
    const dimsNotice = el(doc, "span", "dims-notice");
    dimsNotice.id = "dims-notice";
    const preview = el(doc, "div", "brick-preview");
    preview.id = "brick-preview";
    dims.append(heightInput, widthInput, dimsBtn, dimsError, dimsNotice, preview);
    mainArea.appendChild(dims);

    const freeHost = el(doc, "div", "canvas free-canvas hidden");
    freeHost.id = "free-canvas";
    const digiHost = el(doc, "div", "canvas digitized-canvas hidden");
    digiHost.id = "digitized-canvas";
    mainArea.append(freeHost, digiHost);

    const summary = el(doc, "div", "summary");
    summary.id = "design-summary";
    const exports = el(doc, "div", "exports");
    exports.id = "export-links";
    const status = el(doc, "div", "status");
    status.id = "status";
    status.setAttribute("role", "alert");
    mainArea.append(summary, exports, status);

    this.root.append(sidebar, mainArea);
    return {
      projectList,
      nameInput,
      typeSelect,
      freeHost,
      digiHost,
      heightInput,
      widthInput,
      seedInput,
      dimsError,
      dimsNotice,
      preview,
      summary,
      status,
      title,
      exports,
    };
  }
}

export function mountApp(root: HTMLElement, api: Api, win: Window): App {
  return new App(root, api, win);
}
