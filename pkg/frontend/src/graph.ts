/**
 * Graph view model: a deterministic layout of the session's draft graph.
 *
 * Executed operations form a left-to-right spine in exactly the order the
 * server reports (`exec_order`); the view never re-derives that order.
 * Arguments hang below the spine, and any argument with more than one
 * incoming non-succ edge is emphasized as reentrant.
 */

import type { LintJson, PegFileJson } from "./api.js";

export interface SpineNode {
  id: string;
  surface: string;
  type: string;
  column: number;
}

export interface ArgumentNode {
  id: string;
  surface: string;
  type: string;
  reentrant: boolean;
}

export interface ViewEdge {
  source: string;
  role: string;
  target: string;
  kind: "succ" | "role";
}

export interface GraphViewModel {
  /** executed operations, left to right, in server execution order */
  spine: SpineNode[];
  /** grounded operations not yet executed */
  pendingOperations: ArgumentNode[];
  arguments: ArgumentNode[];
  edges: ViewEdge[];
  componentCount: number;
  lintScore: number;
}

export function buildGraphView(
  peg: PegFileJson,
  execOrder: string[],
  lint: LintJson,
): GraphViewModel {
  const mentionText = new Map(
    peg.document.mentions.map((m) => [m.id, m.surface]),
  );
  const describe = (nodeId: string) => {
    const node = peg.nodes.find((n) => n.id === nodeId);
    return {
      id: nodeId,
      surface: node ? (mentionText.get(node.mention) ?? nodeId) : nodeId,
      type: node?.type ?? "unknown",
    };
  };

  const spine = execOrder.map((id, column) => ({ ...describe(id), column }));
  const onSpine = new Set(execOrder);

  const incoming = new Map<string, number>();
  const edges: ViewEdge[] = peg.edges.map((e) => {
    const kind = e.role === "succ" ? ("succ" as const) : ("role" as const);
    if (kind === "role") {
      incoming.set(e.target, (incoming.get(e.target) ?? 0) + 1);
    }
    return { source: e.source, role: e.role, target: e.target, kind };
  });

  const operationIds = new Set(
    peg.document.mentions
      .filter((m) => m.kind === "operation")
      .map((m) => m.id),
  );
  const pendingOperations: ArgumentNode[] = [];
  const args: ArgumentNode[] = [];
  for (const node of peg.nodes) {
    if (onSpine.has(node.id)) continue;
    const entry = { ...describe(node.id), reentrant: (incoming.get(node.id) ?? 0) > 1 };
    (operationIds.has(node.mention) ? pendingOperations : args).push(entry);
  }

  return {
    spine,
    pendingOperations,
    arguments: args,
    edges,
    componentCount: lint.component_count,
    lintScore: lint.score,
  };
}
