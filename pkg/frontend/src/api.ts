/** Thin typed client for the service; the UI's only source of results. */
import type {
  CatalogDoc,
  ComponentDoc,
  ComputeDoc,
  ImproveDoc,
  SecurityClass,
  SystemDoc,
  SystemSummary,
  TablesDoc,
} from "./types";

export class ApiError extends Error {
  status: number;
  details: { path: string; rule: string; message: string }[];

  constructor(status: number, message: string, details: ApiError["details"] = []) {
    super(message);
    this.status = status;
    this.details = details;
  }
}

export class ApiClient {
  constructor(
    private base: string = "/api",
    private token: string | null = null,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await fetch(`${this.base}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 204) return undefined as T;
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : undefined;
    if (!response.ok) {
      const err = parsed?.error;
      throw new ApiError(response.status, err?.message ?? response.statusText, err?.details ?? []);
    }
    return parsed as T;
  }

  health() {
    return this.request<{ name: string; version: string }>("GET", "/health");
  }

  listSystems() {
    return this.request<{ systems: SystemSummary[] }>("GET", "/systems");
  }

  createSystem(name: string, description = "") {
    return this.request<SystemDoc>("POST", "/systems", { name, description });
  }

  getSystem(id: string) {
    return this.request<SystemDoc>("GET", `/systems/${id}`);
  }

  deleteSystem(id: string) {
    return this.request<void>("DELETE", `/systems/${id}`);
  }

  addComponent(systemId: string, name: string, componentType: string, version: number) {
    return this.request<ComponentDoc>("POST", `/systems/${systemId}/components`, {
      name,
      component_type: componentType,
      version,
    });
  }

  deleteComponent(systemId: string, componentId: string) {
    return this.request<void>("DELETE", `/systems/${systemId}/components/${componentId}`);
  }

  putAssessment(
    systemId: string,
    componentId: string,
    patch: Partial<ComponentDoc> & { version: number },
  ) {
    return this.request<ComponentDoc>(
      "PUT",
      `/systems/${systemId}/components/${componentId}/assessment`,
      patch,
    );
  }

  compute(systemId: string) {
    return this.request<ComputeDoc>("POST", `/systems/${systemId}/compute`);
  }

  improve(systemId: string, target: SecurityClass, componentId?: string) {
    return this.request<ImproveDoc>("POST", `/systems/${systemId}/improve`, {
      target,
      ...(componentId ? { component_id: componentId } : {}),
    });
  }

  getTables() {
    return this.request<TablesDoc>("GET", "/config/tables");
  }

  putTables(doc: TablesDoc, strict = false) {
    const qs = strict ? "?strictness=strict" : "";
    return this.request<TablesDoc>("PUT", `/config/tables${qs}`, doc);
  }

  resetTables() {
    return this.request<TablesDoc>("DELETE", "/config/tables");
  }

  getCatalog() {
    return this.request<CatalogDoc>("GET", "/config/catalog");
  }
}
