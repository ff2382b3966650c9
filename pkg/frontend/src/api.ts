// Thin fetch client; every non-2xx response surfaces as ApiFailure so the
// reducers can turn it into a banner or inline notice.

import { MutatePayload, SeedPayload, VariableDetail } from "./types.js";

export class ApiFailure extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function request<T>(method: string, path: string, body?: unknown): Promise<T> {
  const response = await fetch(path, {
    method,
    headers: { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok) {
    throw new ApiFailure(response.status, payload.error ?? "request failed");
  }
  return payload as T;
}

export function createSession(type: string, ell: number): Promise<SeedPayload> {
  return request<SeedPayload>("POST", "/session", { type, ell });
}

export function mutate(session: string, k: number): Promise<MutatePayload> {
  return request<MutatePayload>("POST", `/session/${session}/mutate`, { k });
}

export function undo(session: string): Promise<SeedPayload> {
  return request<SeedPayload>("POST", `/session/${session}/undo`);
}

export function variableDetail(
  session: string,
  index: number,
): Promise<VariableDetail> {
  return request<VariableDetail>(
    "GET",
    `/session/${session}/variable?var=${index}`,
  );
}
