import { InfoResponse, SessionResponse, TurnResponse } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    throw new ApiError(response.status, `${init?.method ?? "GET"} ${url} -> ${response.status}`);
  }
  return response.json() as Promise<T>;
}

export class ApiClient {
  constructor(private baseUrl = "") {}

  async createSession(): Promise<string> {
    const body = await request<SessionResponse>(`${this.baseUrl}/api/sessions`, {
      method: "POST",
    });
    return body.session_id;
  }

  sendMessage(sessionId: string, text: string): Promise<TurnResponse> {
    return request<TurnResponse>(
      `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/messages`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ text }),
      },
    );
  }

  getInfo(): Promise<InfoResponse> {
    return request<InfoResponse>(`${this.baseUrl}/api/info`);
  }
}
