/** Wire types mirroring the service's JSON documents. */

export type ProtectionLevel = "P1" | "P2" | "P3" | "P4" | "P5";
export type ConnectivityLevel = "C1" | "C2" | "C3" | "C4" | "C5";
export type ExposureLevel = "E1" | "E2" | "E3" | "E4" | "E5";
export type ImpactLevel = "Insignificant" | "Minor" | "Moderate" | "Major" | "Catastrophic";
export type SecurityClass = "A" | "B" | "C" | "D" | "E" | "F";
export type NetworkScope = "isolated" | "home_area" | "wide_area";
export type AnswerStatus = "satisfied" | "unsatisfied" | "not_applicable";

export const IMPACTS: ImpactLevel[] = ["Insignificant", "Minor", "Moderate", "Major", "Catastrophic"];
export const CLASSES: SecurityClass[] = ["A", "B", "C", "D", "E", "F"];
export const PROTECTIONS: ProtectionLevel[] = ["P1", "P2", "P3", "P4", "P5"];
export const CONNECTIVITIES: ConnectivityLevel[] = ["C1", "C2", "C3", "C4", "C5"];
export const EXPOSURES: ExposureLevel[] = ["E1", "E2", "E3", "E4", "E5"];
export const SCOPES: NetworkScope[] = ["isolated", "home_area", "wide_area"];

export interface CriterionAnswer {
  criterion_id: string;
  status: AnswerStatus;
  belief: number;
  weight: number;
}

export interface ConnectivitySelection {
  level: ConnectivityLevel;
  provenance: "derived" | "user_override";
}

export interface ComponentDoc {
  id: string;
  name: string;
  component_type: string;
  description: string;
  features: string;
  impact: ImpactLevel | null;
  communication_mechanisms: string[];
  network_scope: NetworkScope | null;
  connectivity: ConnectivitySelection | null;
  answers: CriterionAnswer[];
}

export interface SystemDoc {
  schema_version: number;
  id: string;
  name: string;
  description: string;
  version: number;
  components: ComponentDoc[];
  last_results: { input_hash: string; computed: ComputeDoc } | null;
  results_freshness?: "fresh" | "stale" | null;
}

export interface SystemSummary {
  id: string;
  name: string;
  description: string;
  version: number;
  component_count: number;
  last_class: SecurityClass | null;
  results_freshness: "fresh" | "stale" | null;
}

export interface TraceFact {
  step: string;
  value?: string | number;
  table?: "exposure" | "class";
  row?: string;
  column?: string;
  provenance?: string;
  notes?: string[];
  blocking_level?: string | null;
  blocking_criteria?: string[];
  waived_by_connectivity?: string[];
  not_applicable?: string[];
  note?: string;
  tables_origin?: string;
}

export interface ComponentResult {
  component_id: string;
  name: string;
  component_type: string;
  protection: ProtectionLevel;
  connectivity: ConnectivityLevel;
  exposure: ExposureLevel;
  impact: ImpactLevel;
  class: SecurityClass;
  confidence: number;
  trace: TraceFact[];
}

export interface ComputeDoc {
  system_id: string;
  system_name: string;
  system_class: SecurityClass;
  components: ComponentResult[];
  input_hash: string;
  tables_origin: string;
  catalog_version: string;
}

export interface ImprovementPlan {
  criteria_to_satisfy: string[];
  criteria_count: number;
  connectivity_change: { from: ConnectivityLevel; to: ConnectivityLevel; reduction: number } | null;
  protection: ProtectionLevel;
  connectivity: ConnectivityLevel;
  exposure: ExposureLevel;
  class: SecurityClass;
}

export interface ImprovementOutcome {
  component_id: string;
  name: string;
  status: "plans" | "already_at_target" | "unreachable";
  target: SecurityClass;
  current: Omit<ComponentResult, "name" | "component_type">;
  plans: ImprovementPlan[];
  note: string | null;
  best_achievable: SecurityClass | null;
}

export interface ImproveDoc {
  system_id: string;
  target: SecurityClass;
  components: ImprovementOutcome[];
}

export interface TablesDoc {
  schema_version: number;
  origin: "default" | "custom";
  exposure: Record<ProtectionLevel, Record<ConnectivityLevel, ExposureLevel>>;
  class: Record<ImpactLevel, Record<ExposureLevel, SecurityClass>>;
  validation?: { findings: { severity: string; code: string; message: string }[] };
}

export interface CatalogCriterion {
  id: string;
  title: string;
  help: string;
  required_from_level: ProtectionLevel;
  applies_to: string[];
  min_connectivity?: ConnectivityLevel;
}

export interface CatalogDoc {
  schema_version: number;
  version: string;
  component_types: { name: string; built_in: boolean; default_na_criteria: string[] }[];
  criteria: CatalogCriterion[];
}

export interface ApiErrorBody {
  error: {
    status: number;
    message: string;
    details: { path: string; rule: string; message: string }[];
  };
}
