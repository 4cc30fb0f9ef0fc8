/**
 * Typed client for the pegkit annotation session service.
 *
 * Every piece of rendered information flows through this client: the UI
 * never computes graph or state facts on its own, it only lays out what
 * the server reports.
 */

export interface Diagnostic {
  severity: "error" | "warning";
  code: string;
  locus: string;
  message: string;
}

export interface MentionJson {
  id: string;
  start: number;
  end: number;
  surface: string;
  kind: "operation" | "argument";
  hint?: string;
}

export interface DocumentJson {
  id: string;
  text: string;
  sentences: [number, number][];
  mentions: MentionJson[];
}

export interface PegNodeJson {
  id: string;
  mention: string;
  type: string;
}

export interface PegEdgeJson {
  source: string;
  role: string;
  target: string;
}

export interface PegFileJson {
  format_version: number;
  document: DocumentJson;
  nodes: PegNodeJson[];
  edges: PegEdgeJson[];
}

export interface EntityStateJson {
  exists: boolean;
  destroyed: boolean;
  sealed: boolean;
  location: string | null;
  contents: string[];
  resting_place: string | null;
}

export interface SessionStateJson {
  revision: number;
  entities: Record<string, EntityStateJson>;
  exec_order: string[];
}

export interface LintJson {
  component_count: number;
  isolated_mentions: string[];
  score: number;
}

/** Outcome of posting one console line; 409 rejections are not thrown. */
export interface CommandOutcome {
  accepted: boolean;
  revision: number;
  diagnostics: Diagnostic[];
  output: string;
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!response.ok) {
      throw new ApiError(`GET ${path} failed`, response.status);
    }
    return (await response.json()) as T;
  }

  async documents(): Promise<string[]> {
    return (await this.get<{ documents: string[] }>("/documents")).documents;
  }

  async document(id: string): Promise<DocumentJson> {
    return this.get<DocumentJson>(`/documents/${id}`);
  }

  async ontology(): Promise<Record<string, unknown>> {
    return this.get<Record<string, unknown>>("/ontology");
  }

  async createSession(documentId: string): Promise<string> {
    const response = await this.fetchFn(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ document_id: documentId }),
    });
    if (response.status !== 201) {
      throw new ApiError(`cannot open session for ${documentId}`, response.status);
    }
    const body = (await response.json()) as { session_id: string };
    return body.session_id;
  }

  /**
   * Post one command line with the optimistic-concurrency revision; a 409
   * (rejected command or revision conflict) comes back as a normal outcome
   * so the console can render the diagnostics inline.
   */
  async command(
    sessionId: string,
    line: string,
    revision: number,
  ): Promise<CommandOutcome> {
    const response = await this.fetchFn(
      `${this.baseUrl}/sessions/${sessionId}/command`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ line, revision }),
      },
    );
    if (response.status === 409) {
      const body = (await response.json()) as {
        detail: { diagnostics: Diagnostic[] };
      };
      return {
        accepted: false,
        revision,
        diagnostics: body.detail.diagnostics,
        output: "",
      };
    }
    if (!response.ok) {
      throw new ApiError(`command failed: ${line}`, response.status);
    }
    const body = (await response.json()) as {
      revision: number;
      diagnostics: Diagnostic[];
      output: string;
    };
    return { accepted: true, ...body };
  }

  async autocomplete(sessionId: string, prefix: string): Promise<string[]> {
    const encoded = encodeURIComponent(prefix);
    const body = await this.get<{ completions: string[] }>(
      `/sessions/${sessionId}/autocomplete?prefix=${encoded}`,
    );
    return body.completions;
  }

  async state(sessionId: string): Promise<SessionStateJson> {
    return this.get<SessionStateJson>(`/sessions/${sessionId}/state`);
  }

  async peg(sessionId: string): Promise<PegFileJson> {
    return this.get<PegFileJson>(`/sessions/${sessionId}/peg`);
  }

  async lint(sessionId: string): Promise<LintJson> {
    return this.get<LintJson>(`/sessions/${sessionId}/lint`);
  }

  async finalize(sessionId: string): Promise<{ peg: PegFileJson; lint: LintJson }> {
    const response = await this.fetchFn(
      `${this.baseUrl}/sessions/${sessionId}/finalize`,
      { method: "POST" },
    );
    if (!response.ok) {
      throw new ApiError("finalize rejected", response.status);
    }
    return (await response.json()) as { peg: PegFileJson; lint: LintJson };
  }
}
