/**
 * SessionController: the one place where console input meets the service.
 *
 * It owns the optimistic-concurrency revision, turns Tab presses into
 * autocomplete calls, posts submitted lines, and refreshes the derived
 * views (entity state, graph, lint) after every accepted command. All of
 * it is DOM-free so the whole interaction loop is testable headlessly.
 */

import { ApiClient, LintJson, PegFileJson, SessionStateJson } from "./api.js";
import { ConsoleModel } from "./console.js";
import { GraphViewModel, buildGraphView } from "./graph.js";
import { EntityCard, buildEntityCards } from "./state.js";

export class SessionController {
  readonly console = new ConsoleModel();

  sessionId = "";
  documentId = "";
  revision = 0;

  /** Derived views, refreshed from the service after each accepted command. */
  state: SessionStateJson | null = null;
  peg: PegFileJson | null = null;
  lint: LintJson | null = null;
  entityCards: EntityCard[] = [];
  graphView: GraphViewModel | null = null;

  /** True when the last refresh failed and the views may be out of date. */
  stale = false;

  constructor(private readonly api: ApiClient) {}

  async open(documentId: string): Promise<void> {
    this.sessionId = await this.api.createSession(documentId);
    this.documentId = documentId;
    this.revision = 0;
    await this.refresh();
  }

  /** Tab pressed: ask the service what may legally come next. */
  async tabComplete(): Promise<void> {
    const items = await this.api.autocomplete(
      this.sessionId,
      this.console.input,
    );
    this.console.showCompletions(items);
  }

  /**
   * Enter pressed. A completion popup swallows the keypress; otherwise the
   * pending line goes to the service with the current revision. Rejections
   * land in the transcript as inline diagnostics and keep the input.
   */
  async submit(): Promise<void> {
    if (this.console.popup.visible) {
      this.console.acceptCompletion();
      return;
    }
    const line = this.console.input.trim();
    if (line === "") return;
    const outcome = await this.api.command(this.sessionId, line, this.revision);
    this.console.recordOutcome({
      line,
      accepted: outcome.accepted,
      diagnostics: outcome.diagnostics,
      output: outcome.output,
    });
    if (outcome.accepted) {
      this.revision = outcome.revision;
      await this.refresh();
    }
  }

  /** Re-fetch every derived view; on failure mark the panels stale. */
  async refresh(): Promise<void> {
    try {
      const [state, peg, lint] = await Promise.all([
        this.api.state(this.sessionId),
        this.api.peg(this.sessionId),
        this.api.lint(this.sessionId),
      ]);
      this.state = state;
      this.peg = peg;
      this.lint = lint;
      this.entityCards = buildEntityCards(state, peg);
      this.graphView = buildGraphView(peg, state.exec_order, lint);
      this.stale = false;
    } catch {
      this.stale = true;
    }
  }
}
