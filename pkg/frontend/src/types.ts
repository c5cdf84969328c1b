export interface SessionResponse {
  session_id: string;
}

export interface TurnResponse {
  intent: string;
  confidence: number;
  response: string;
  followup: string | null;
  ended: boolean;
}

export interface InfoResponse {
  backend: string;
  intents: string[];
  pattern_count: number;
  response_count: number;
  fingerprint: string;
}

export type Role = "user" | "bot" | "system";

export interface Message {
  role: Role;
  text: string;
  intent?: string;
  confidence?: number;
}
