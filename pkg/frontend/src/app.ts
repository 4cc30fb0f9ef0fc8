/**
 * Thin DOM layer: renders the controller's view models into index.html and
 * forwards key events. All behavior lives in the DOM-free modules; this file
 * only paints and dispatches.
 */

import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (found === null) throw new Error(`missing element #${id}`);
  return found;
}

function renderDocument(controller: SessionController): void {
  const pane = el("document");
  const doc = controller.peg?.document;
  if (!doc) {
    pane.textContent = "";
    return;
  }
  pane.textContent = "";
  let cursor = 0;
  const ordered = [...doc.mentions].sort((a, b) => a.start - b.start);
  for (const mention of ordered) {
    pane.append(doc.text.slice(cursor, mention.start));
    const span = document.createElement("span");
    span.className = `mention mention-${mention.kind}`;
    span.dataset["mention"] = mention.id;
    span.textContent = doc.text.slice(mention.start, mention.end);
    pane.append(span);
    cursor = mention.end;
  }
  pane.append(doc.text.slice(cursor));
}

function renderTranscript(controller: SessionController): void {
  const pane = el("transcript");
  pane.textContent = "";
  for (const entry of controller.console.transcript) {
    const line = document.createElement("div");
    line.className = entry.accepted ? "cmd accepted" : "cmd rejected";
    line.textContent = `> ${entry.line}`;
    pane.append(line);
    if (entry.output) {
      const out = document.createElement("pre");
      out.textContent = entry.output;
      pane.append(out);
    }
    for (const diagnostic of entry.diagnostics) {
      const note = document.createElement("div");
      note.className = `diagnostic ${diagnostic.severity}`;
      note.textContent = `${diagnostic.severity}: ${diagnostic.code} at ${diagnostic.locus} — ${diagnostic.message}`;
      pane.append(note);
    }
  }
  pane.scrollTop = pane.scrollHeight;
}

function renderPopup(controller: SessionController): void {
  const pane = el("completions");
  const popup = controller.console.popup;
  pane.textContent = "";
  pane.hidden = !popup.visible;
  popup.items.forEach((item, index) => {
    const row = document.createElement("div");
    row.className = index === popup.selected ? "completion selected" : "completion";
    row.textContent = item;
    pane.append(row);
  });
}

function renderState(controller: SessionController): void {
  const pane = el("state");
  pane.textContent = "";
  for (const card of controller.entityCards) {
    const box = document.createElement("div");
    box.className = `entity ${card.status}`;
    const bits = [`${card.surface} (${card.type})`];
    if (card.location !== null) bits.push(`in ${card.location}`);
    if (card.contents.length > 0) bits.push(`holds ${card.contents.join(", ")}`);
    if (card.status !== "ok") bits.push(card.status);
    box.textContent = bits.join(" · ");
    pane.append(box);
  }
}

function renderGraph(controller: SessionController): void {
  const pane = el("graph");
  pane.textContent = "";
  const view = controller.graphView;
  if (!view) return;
  const spine = document.createElement("div");
  spine.className = "spine";
  view.spine.forEach((node, index) => {
    if (index > 0) {
      const arrow = document.createElement("span");
      arrow.className = "succ-arrow";
      arrow.textContent = " ⟶ ";
      spine.append(arrow);
    }
    const box = document.createElement("span");
    box.className = "op";
    box.dataset["node"] = node.id;
    box.textContent = `${node.surface}:${node.type}`;
    spine.append(box);
  });
  pane.append(spine);
  const row = document.createElement("div");
  row.className = "arguments";
  for (const arg of view.arguments) {
    const box = document.createElement("span");
    box.className = arg.reentrant ? "arg reentrant" : "arg";
    box.dataset["node"] = arg.id;
    box.textContent = `${arg.surface}:${arg.type}`;
    row.append(box);
  }
  pane.append(row);
  el("lint").textContent =
    `components: ${view.componentCount} · lint score: ${view.lintScore}`;
}

function render(controller: SessionController): void {
  renderDocument(controller);
  renderTranscript(controller);
  renderPopup(controller);
  renderState(controller);
  renderGraph(controller);
  el("stale-banner").hidden = !controller.stale;
  const input = el("input") as HTMLInputElement;
  input.value = controller.console.input;
}

export async function start(baseUrl: string, documentId: string): Promise<SessionController> {
  const controller = new SessionController(new ApiClient(baseUrl));
  await controller.open(documentId);
  const input = el("input") as HTMLInputElement;

  input.addEventListener("input", () => {
    controller.console.setInput(input.value);
    renderPopup(controller);
  });
  input.addEventListener("keydown", (event) => {
    const handlers: Record<string, () => void | Promise<void>> = {
      Tab: () => controller.tabComplete(),
      Enter: () => controller.submit(),
      ArrowUp: () => controller.console.historyPrevious(),
      ArrowDown: () => controller.console.historyNext(),
      Escape: () => controller.console.dismissCompletions(),
    };
    const handler = handlers[event.key];
    if (handler === undefined) return;
    event.preventDefault();
    Promise.resolve(handler()).then(() => render(controller));
  });

  render(controller);
  return controller;
}
