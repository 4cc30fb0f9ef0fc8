/**
 * Console model: command history, pending input, the completion popup, and
 * the transcript of issued commands with their inline diagnostics.
 *
 * Pure state — no DOM and no network. The SessionController in
 * `controller.ts` wires this model to the service.
 */

import type { Diagnostic } from "./api.js";

/** One transcript entry: the line as issued plus the server's verdict. */
export interface TranscriptEntry {
  line: string;
  accepted: boolean;
  diagnostics: Diagnostic[];
  output: string;
}

export interface CompletionPopup {
  visible: boolean;
  items: string[];
  selected: number;
}

const HIDDEN_POPUP: CompletionPopup = { visible: false, items: [], selected: 0 };

export class ConsoleModel {
  input = "";
  popup: CompletionPopup = HIDDEN_POPUP;
  readonly transcript: TranscriptEntry[] = [];

  private readonly history: string[] = [];
  /** history.length means "past the newest entry", i.e. editing fresh input */
  private historyCursor = 0;
  private savedInput = "";

  setInput(text: string): void {
    this.input = text;
    this.popup = HIDDEN_POPUP;
    this.historyCursor = this.history.length;
  }

  /** Up-arrow: recall the previous command, preserving unfinished input. */
  historyPrevious(): void {
    if (this.historyCursor === 0) return;
    if (this.historyCursor === this.history.length) {
      this.savedInput = this.input;
    }
    this.historyCursor -= 1;
    this.input = this.history[this.historyCursor] ?? "";
    this.popup = HIDDEN_POPUP;
  }

  /** Down-arrow: move forward, restoring the unfinished input at the end. */
  historyNext(): void {
    if (this.historyCursor >= this.history.length) return;
    this.historyCursor += 1;
    this.input =
      this.historyCursor === this.history.length
        ? this.savedInput
        : (this.history[this.historyCursor] ?? "");
    this.popup = HIDDEN_POPUP;
  }

  /** Tab with server-provided completions: open or cycle the popup. */
  showCompletions(items: string[]): void {
    if (items.length === 0) {
      this.popup = HIDDEN_POPUP;
      return;
    }
    if (this.popup.visible && sameItems(this.popup.items, items)) {
      this.popup = {
        visible: true,
        items,
        selected: (this.popup.selected + 1) % items.length,
      };
      return;
    }
    this.popup = { visible: true, items, selected: 0 };
    if (items.length === 1) {
      this.acceptCompletion();
    }
  }

  /** Replace the token being typed with the selected completion. */
  acceptCompletion(): void {
    if (!this.popup.visible) return;
    const chosen = this.popup.items[this.popup.selected];
    if (chosen === undefined) return;
    const boundary = this.input.endsWith(" ") || this.input === "";
    const parts = this.input.split(/\s+/).filter((p) => p.length > 0);
    const kept = boundary ? parts : parts.slice(0, -1);
    this.input = [...kept, chosen].join(" ") + " ";
    this.popup = HIDDEN_POPUP;
  }

  dismissCompletions(): void {
    this.popup = HIDDEN_POPUP;
  }

  /**
   * Record the server's verdict for the pending line. Accepted commands
   * clear the input; rejections keep it so the annotator can fix the line.
   */
  recordOutcome(entry: TranscriptEntry): void {
    this.transcript.push(entry);
    this.history.push(entry.line);
    this.historyCursor = this.history.length;
    this.savedInput = "";
    if (entry.accepted) {
      this.input = "";
    }
    this.popup = HIDDEN_POPUP;
  }

  get historyLines(): readonly string[] {
    return this.history;
  }
}

function sameItems(a: string[], b: string[]): boolean {
  return a.length === b.length && a.every((item, i) => item === b[i]);
}
