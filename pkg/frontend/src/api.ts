/**
 * Typed client for the practicesearch JSON API. The UI never computes
 * scores or parses raw model output itself; everything comes through
 * these four calls.
 */

export type Engine = 'ir' | 'glm';

export interface SearchResult {
  title: string;
  description?: string;
  task?: string;
  score?: number;
}

export interface SearchResponse {
  query: string;
  engine?: string; // absent in blind-mode deployments
  results: SearchResult[];
}

export interface PracticeSource {
  origin: string;
  url?: string;
}

export interface Practice {
  id: string;
  title: string;
  description: string;
  stage: string;
  task: string;
  source: PracticeSource;
}

export interface StageGroup {
  stage: string;
  practices: Practice[];
}

export interface StagesResponse {
  stages: StageGroup[];
  note: string;
}

export interface FeedbackEvent {
  query: string;
  engine_used: Engine;
  target: string;
  verdict?: 'useful' | 'not_useful';
  stars?: number;
}

async function requestJson(url: string, init?: RequestInit): Promise<any> {
  const resp = await fetch(url, init);
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && body.detail !== undefined) {
        detail = typeof body.detail === 'string'
          ? body.detail
          : JSON.stringify(body.detail);
      }
    } catch {
      // keep the status text
    }
    throw new Error(`request failed (${resp.status}): ${detail}`);
  }
  return resp.json();
}

export async function search(
  q: string,
  engine: Engine,
  k: number = 10,
  signal?: AbortSignal,
): Promise<SearchResponse> {
  const params = new URLSearchParams({ q, engine, k: String(k) });
  return requestJson(`/api/search?${params}`, { signal });
}

export async function getPractices(
  stage?: string,
  task?: string,
): Promise<{ practices: Practice[] }> {
  const params = new URLSearchParams();
  if (stage) params.set('stage', stage);
  if (task) params.set('task', task);
  const suffix = params.size > 0 ? `?${params}` : '';
  return requestJson(`/api/practices${suffix}`);
}

export async function getStages(): Promise<StagesResponse> {
  return requestJson('/api/stages');
}

export async function postFeedback(event: FeedbackEvent): Promise<{ id: string }> {
  return requestJson('/api/feedback', {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(event),
  });
}
