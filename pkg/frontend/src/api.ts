/**
 * Typed client for the exercise service HTTP+JSON API.
 *
 * This is the webapp's only doorway to the backend: no LLM access, no
 * solution data. The fetch function is injectable so tests run without
 * a browser or a server.
 */

export type ContextMode = 'named' | 'custom' | 'none' | 'surprise';

export interface CatalogResponse {
  contexts: string[];
  concepts: string[];
  modes: ContextMode[];
}

export interface ExerciseRequestPayload {
  context_mode: ContextMode;
  context_text?: string;
  concepts: string[];
}

export interface ClientBlock {
  block_id: string;
  text: string;
}

/** Mirrors the POST /api/exercises response: statement plus presented
 *  blocks only — the server never sends solution order or indents. */
export interface ClientExerciseView {
  exercise_id: string;
  statement: string;
  blocks: ClientBlock[];
}

export interface PlacementPayload {
  block_id: string;
  indent_level: number;
}

export interface GradeResponse {
  status: 'solved' | 'incorrect';
  messages: string[];
  diagnostics: ('correct' | 'wrong_position' | 'wrong_indent' | 'missing')[];
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = 'HttpError';
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as ApiErrorBody;
    if (body.error) {
      code = body.error.code;
      message = body.error.message;
    }
  } catch {
    // non-JSON error body: keep the generic message
  }
  throw new ApiError(response.status, code, message);
}

export class ExerciseApi {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async fetchCatalog(): Promise<CatalogResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/api/catalog`);
    return parseOrThrow<CatalogResponse>(response);
  }

  async createExercise(payload: ExerciseRequestPayload): Promise<ClientExerciseView> {
    const response = await this.fetchFn(`${this.baseUrl}/api/exercises`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
    return parseOrThrow<ClientExerciseView>(response);
  }

  async submitAttempt(
    exerciseId: string,
    placements: PlacementPayload[],
  ): Promise<GradeResponse> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/exercises/${encodeURIComponent(exerciseId)}/attempts`,
      {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify({ placements }),
      },
    );
    return parseOrThrow<GradeResponse>(response);
  }
}
