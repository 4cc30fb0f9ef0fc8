import { describe, expect, it } from "vitest";

import type { LintJson, PegFileJson, SessionStateJson } from "../src/api.js";
import { buildGraphView } from "../src/graph.js";
import { buildEntityCards } from "../src/state.js";

const peg: PegFileJson = {
  format_version: 1,
  document: {
    id: "fig1",
    text: "Add cells to the culture tubes. Swirl gently. Incubate for 30 minutes.",
    sentences: [
      [0, 31],
      [32, 45],
      [46, 70],
    ],
    mentions: [
      { id: "T1", start: 0, end: 3, surface: "Add", kind: "operation" },
      { id: "T2", start: 4, end: 9, surface: "cells", kind: "argument" },
      { id: "T3", start: 17, end: 30, surface: "culture tubes", kind: "argument" },
      { id: "T4", start: 32, end: 37, surface: "Swirl", kind: "operation" },
      { id: "T5", start: 38, end: 44, surface: "gently", kind: "argument" },
      { id: "T6", start: 46, end: 54, surface: "Incubate", kind: "operation" },
      { id: "T7", start: 59, end: 69, surface: "30 minutes", kind: "argument" },
    ],
  },
  nodes: [
    { id: "n.T1", mention: "T1", type: "transfer" },
    { id: "n.T2", mention: "T2", type: "reagent" },
    { id: "n.T3", mention: "T3", type: "location" },
    { id: "n.T4", mention: "T4", type: "mix" },
    { id: "n.T5", mention: "T5", type: "modifier" },
    { id: "n.T6", mention: "T6", type: "temperature-treatment" },
    { id: "n.T7", mention: "T7", type: "setting" },
  ],
  edges: [
    { source: "n.T1", role: "ARG0", target: "n.T2" },
    { source: "n.T1", role: "site", target: "n.T3" },
    { source: "n.T1", role: "succ", target: "n.T4" },
    { source: "n.T4", role: "ARG0", target: "n.T3" },
    { source: "n.T4", role: "modifier", target: "n.T5" },
    { source: "n.T4", role: "succ", target: "n.T6" },
    { source: "n.T6", role: "ARG0", target: "n.T3" },
    { source: "n.T6", role: "setting", target: "n.T7" },
  ],
};

const execOrder = ["n.T1", "n.T4", "n.T6"];
const lint: LintJson = { component_count: 1, isolated_mentions: [], score: 1 };

describe("buildGraphView", () => {
  it("lays the spine out in server execution order", () => {
    const view = buildGraphView(peg, execOrder, lint);
    expect(view.spine.map((n) => n.id)).toEqual(execOrder);
    expect(view.spine.map((n) => n.column)).toEqual([0, 1, 2]);
    expect(view.spine[0]?.surface).toBe("Add");
    expect(view.spine[2]?.type).toBe("temperature-treatment");
  });

  it("never reorders the spine itself", () => {
    // even a nonsensical server order is rendered verbatim
    const shuffled = ["n.T6", "n.T1", "n.T4"];
    const view = buildGraphView(peg, shuffled, lint);
    expect(view.spine.map((n) => n.id)).toEqual(shuffled);
  });

  it("flags reentrant arguments", () => {
    const view = buildGraphView(peg, execOrder, lint);
    const byId = new Map(view.arguments.map((a) => [a.id, a]));
    expect(byId.get("n.T3")?.reentrant).toBe(true); // three incoming role edges
    expect(byId.get("n.T2")?.reentrant).toBe(false);
    expect(byId.get("n.T5")?.reentrant).toBe(false);
  });

  it("separates succ edges from role edges", () => {
    const view = buildGraphView(peg, execOrder, lint);
    const succ = view.edges.filter((e) => e.kind === "succ");
    expect(succ.map((e) => [e.source, e.target])).toEqual([
      ["n.T1", "n.T4"],
      ["n.T4", "n.T6"],
    ]);
    expect(view.edges.filter((e) => e.kind === "role")).toHaveLength(6);
  });

  it("keeps grounded-but-unexecuted operations off the spine", () => {
    const view = buildGraphView(peg, ["n.T1"], lint);
    expect(view.spine.map((n) => n.id)).toEqual(["n.T1"]);
    expect(view.pendingOperations.map((n) => n.id).sort()).toEqual([
      "n.T4",
      "n.T6",
    ]);
  });

  it("carries the lint summary through unchanged", () => {
    const view = buildGraphView(peg, execOrder, {
      component_count: 3,
      isolated_mentions: ["T5"],
      score: 5,
    });
    expect(view.componentCount).toBe(3);
    expect(view.lintScore).toBe(5);
  });
});

describe("buildEntityCards", () => {
  const state: SessionStateJson = {
    revision: 16,
    exec_order: execOrder,
    entities: {
      "n.T2": {
        exists: true,
        destroyed: false,
        sealed: false,
        location: "n.T3",
        contents: [],
        resting_place: "n.T3",
      },
      "n.T3": {
        exists: true,
        destroyed: false,
        sealed: true,
        location: null,
        contents: ["n.T2"],
        resting_place: null,
      },
    },
  };

  it("renders surfaces, containment, and status from the server view", () => {
    const cards = buildEntityCards(state, peg);
    expect(cards.map((c) => c.nodeId)).toEqual(["n.T2", "n.T3"]);
    const [cells, tubes] = cards;
    expect(cells).toMatchObject({
      surface: "cells",
      type: "reagent",
      status: "ok",
      location: "culture tubes",
    });
    expect(tubes).toMatchObject({
      surface: "culture tubes",
      status: "sealed",
      contents: ["cells"],
      location: null,
    });
  });

  it("marks destroyed entities even when also sealed", () => {
    const wrecked: SessionStateJson = {
      revision: 1,
      exec_order: [],
      entities: {
        "n.T2": {
          exists: false,
          destroyed: true,
          sealed: true,
          location: null,
          contents: [],
          resting_place: null,
        },
      },
    };
    expect(buildEntityCards(wrecked, peg)[0]?.status).toBe("destroyed");
  });
});
