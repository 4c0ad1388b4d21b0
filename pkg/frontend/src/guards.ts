/**
 * Unsaved-changes guards: the page-exit prompt and the save/discard/cancel
 * modal used before canvas switches and dims edits while draw data is dirty.
 */

export type SwitchChoice = "save" | "discard" | "cancel";

export class UnloadGuard {
  private handler = (event: Event) => {
    if (!this.isDirty()) {
      return;
    }
    event.preventDefault();
    // legacy channel some browsers still require
    (event as BeforeUnloadEvent).returnValue = true;
  };

  constructor(private isDirty: () => boolean) {}

  install(target: Window): void {
    target.addEventListener("beforeunload", this.handler);
  }

  uninstall(target: Window): void {
    target.removeEventListener("beforeunload", this.handler);
  }
}

/**
 * Shows a modal with Save / Discard / Cancel and resolves with the choice.
 * Returns "discard" immediately, without any DOM, when not dirty: callers
 * can always await this and only dirty state ever produces a prompt.
 */
export function askUnsaved(
  doc: Document,
  dirty: boolean,
  message: string,
): Promise<SwitchChoice> {
  if (!dirty) {
    return Promise.resolve("discard");
  }
  return new Promise((resolve) => {
    const overlay = doc.createElement("div");
    overlay.className = "modal-overlay";
    const box = doc.createElement("div");
    box.className = "modal";
    box.setAttribute("role", "dialog");
    box.dataset.testid = "unsaved-modal";

    const text = doc.createElement("p");
    text.textContent = message;
    box.appendChild(text);

    const row = doc.createElement("div");
    row.className = "modal-buttons";
    for (const choice of ["save", "discard", "cancel"] as const) {
      const button = doc.createElement("button");
      button.textContent = choice[0].toUpperCase() + choice.slice(1);
      button.dataset.choice = choice;
      button.addEventListener("click", () => {
        overlay.remove();
        resolve(choice);
      });
      row.appendChild(button);
    }
    box.appendChild(row);
    overlay.appendChild(box);
    doc.body.appendChild(overlay);
  });
}
