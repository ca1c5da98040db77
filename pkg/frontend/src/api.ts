import type {
  AnswerBody,
  ArtifactsResponse,
  DecisionDoc,
  RequestResponse,
  RunResponse,
  SessionView,
  StrategyDoc,
  SynthesisDoc,
} from "./types.js";

/** Non-2xx response, with the server's detail message when present. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const detail =
      body && typeof body === "object" && "detail" in body
        ? String((body as { detail: unknown }).detail)
        : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

/**
 * Thin client over the session service. Every mutating call that the
 * server guards with a revision check sends If-Match; the caller owns
 * the revision it believes the session is at.
 */
export class ConsoleApi {
  constructor(private base: string = "") {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    revision?: number,
  ): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (revision !== undefined) headers["If-Match"] = String(revision);
    const response = await fetch(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return unwrap<T>(response);
  }

  createSession(): Promise<SessionView> {
    return this.request("POST", "/sessions");
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  putData(id: string, doc: DecisionDoc, revision: number): Promise<SessionView> {
    return this.request("PUT", `/sessions/${id}/data`, doc, revision);
  }

  putStrategy(id: string, doc: StrategyDoc, revision: number): Promise<SessionView> {
    return this.request("PUT", `/sessions/${id}/strategy`, doc, revision);
  }

  run(id: string): Promise<RunResponse> {
    return this.request("POST", `/sessions/${id}/run`);
  }

  pendingRequest(id: string): Promise<RequestResponse> {
    return this.request("GET", `/sessions/${id}/request`);
  }

  answer(id: string, body: AnswerBody): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/answer`, body);
  }

  artifacts(id: string): Promise<ArtifactsResponse> {
    return this.request("GET", `/sessions/${id}/artifacts`);
  }

  synthesize(morphology: unknown, variant: number): Promise<SynthesisDoc> {
    return this.request("POST", "/synthesize", { morphology, variant });
  }
}
