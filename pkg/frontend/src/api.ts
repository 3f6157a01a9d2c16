// Typed client for the sentinel service JSON API. Every verdict shown in
// the UI comes verbatim from these response bodies; nothing is computed
// client-side.

export interface ConfidenceInfo {
  kind: string;
  value: number;
}

export interface AssessResponse {
  label: string;
  confidence: ConfidenceInfo;
  model_id: string;
  disclaimer: string;
}

export interface SchemaField {
  name: string;
  label: string;
  kind: "number" | "toggle";
  min: number;
  max: number;
  help: string;
}

export interface TaskSchema {
  task: string;
  model_id: string;
  fields: SchemaField[];
}

export interface GeocodeInfo {
  source: string;
  confidence: number;
  fallback_used: boolean;
}

export interface FacilityHit {
  id: string;
  name: string;
  kind: string;
  district: string;
  lat: number;
  lon: number;
  distance_km: number;
}

export interface FacilitiesResponse {
  origin: { lat: number; lon: number };
  geocode: GeocodeInfo | null;
  results: FacilityHit[];
}

export interface RankingRow {
  rank: number;
  district: string;
  value_pct: number;
}

export interface RankingResponse {
  indicator: string;
  statewide_means: Record<string, number>;
  ranking: RankingRow[];
}

export interface ServiceErrorBody {
  error: string;
  detail: string;
  fields?: string[];
  retry_after?: number | null;
}

export class ServiceError extends Error {
  constructor(
    public status: number,
    public body: ServiceErrorBody,
  ) {
    super(body.detail || body.error || `HTTP ${status}`);
  }

  get fields(): string[] {
    return this.body.fields ?? [];
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ServiceError(resp.status, body as ServiceErrorBody);
    }
    return body as T;
  }

  fetchSchema(task: string): Promise<TaskSchema> {
    return this.request<TaskSchema>(`/schema/${task}`);
  }

  assess(task: string, answers: Record<string, number>): Promise<AssessResponse> {
    return this.request<AssessResponse>(`/assess/${task}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ answers }),
    });
  }

  facilitiesNear(params: {
    lat?: number;
    lon?: number;
    address?: string;
    k: number;
    kind?: string;
  }): Promise<FacilitiesResponse> {
    const query = new URLSearchParams();
    if (params.address !== undefined) {
      query.set("address", params.address);
    } else {
      query.set("lat", String(params.lat));
      query.set("lon", String(params.lon));
    }
    query.set("k", String(params.k));
    if (params.kind) query.set("kind", params.kind);
    return this.request<FacilitiesResponse>(`/facilities/near?${query.toString()}`);
  }

  districtRanking(indicator: string): Promise<RankingResponse> {
    return this.request<RankingResponse>(`/districts/ranking?indicator=${indicator}`);
  }
}
