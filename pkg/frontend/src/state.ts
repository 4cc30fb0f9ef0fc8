/**
 * Entity cards for the state panel: one card per tracked entity, laid out
 * straight from the server's state view. Surfaces come from the peg view so
 * cards show the annotator's words, not node ids.
 */

import type { PegFileJson, SessionStateJson } from "./api.js";

export interface EntityCard {
  nodeId: string;
  surface: string;
  type: string;
  status: "ok" | "sealed" | "destroyed";
  /** surface of the containing entity, or null when free-standing */
  location: string | null;
  /** surfaces of the entities currently inside this one */
  contents: string[];
}

export function buildEntityCards(
  state: SessionStateJson,
  peg: PegFileJson,
): EntityCard[] {
  const surfaces = new Map<string, string>();
  const types = new Map<string, string>();
  const mentionText = new Map(
    peg.document.mentions.map((m) => [m.id, m.surface]),
  );
  for (const node of peg.nodes) {
    surfaces.set(node.id, mentionText.get(node.mention) ?? node.id);
    types.set(node.id, node.type);
  }
  const label = (nodeId: string): string => surfaces.get(nodeId) ?? nodeId;

  return Object.entries(state.entities)
    .map(([nodeId, entity]) => ({
      nodeId,
      surface: label(nodeId),
      type: types.get(nodeId) ?? "unknown",
      status: entity.destroyed
        ? ("destroyed" as const)
        : entity.sealed
          ? ("sealed" as const)
          : ("ok" as const),
      location: entity.location === null ? null : label(entity.location),
      contents: entity.contents.map(label),
    }))
    .sort((a, b) => a.nodeId.localeCompare(b.nodeId));
}
