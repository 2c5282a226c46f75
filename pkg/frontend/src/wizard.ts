/** Wizard state: the ten numbered steps mapped onto four activities.
 *
 * Users anchor on the step numbers, so the numbering is preserved in
 * the UI even though steps are grouped into pages. A step is reachable
 * only when the earlier steps that capture its inputs are complete;
 * purely descriptive steps never block later ones.
 */
import type { ComponentDoc, SystemDoc } from "./types";

export type Activity = "define" | "components" | "assess" | "compute";

export interface StepDef {
  step: number;
  activity: Activity;
  title: string;
  /** steps whose captured inputs this one needs */
  requires: number[];
}

export const STEPS: StepDef[] = [
  { step: 1, activity: "define", title: "Define the system", requires: [] },
  { step: 2, activity: "components", title: "Add its components", requires: [1] },
  { step: 3, activity: "components", title: "Describe component features", requires: [2] },
  { step: 4, activity: "components", title: "Set the impact level", requires: [2] },
  { step: 5, activity: "components", title: "List communication mechanisms", requires: [2] },
  { step: 6, activity: "components", title: "Pick the network scope", requires: [2] },
  { step: 7, activity: "components", title: "Confirm the connectivity level", requires: [5, 6] },
  { step: 8, activity: "assess", title: "Answer the protection criteria", requires: [2] },
  // 9 and 10 are computed rather than captured, so they gate on the
  // capture steps that feed them, not on each other
  { step: 9, activity: "compute", title: "Exposure level (computed)", requires: [7, 8] },
  { step: 10, activity: "compute", title: "Security class (computed)", requires: [4, 7, 8] },
];

export interface WizardState {
  systemId: string | null;
  componentId: string | null;
  /** any input changed since the last compute */
  dirty: boolean;
}

export const initialWizard: WizardState = { systemId: null, componentId: null, dirty: false };

function activeComponent(system: SystemDoc | null, state: WizardState): ComponentDoc | null {
  if (!system) return null;
  return system.components.find((c) => c.id === state.componentId) ?? system.components[0] ?? null;
}

/** Completion of one numbered step given the current documents. */
export function stepComplete(step: number, system: SystemDoc | null, state: WizardState): boolean {
  const component = activeComponent(system, state);
  switch (step) {
    case 1:
      return system !== null && system.name.trim() !== "";
    case 2:
      return (system?.components.length ?? 0) > 0;
    case 3:
      // free-text capture: complete as soon as its component exists
      return component !== null;
    case 4:
      return component?.impact != null;
    case 5:
      return component !== null && component.communication_mechanisms.length > 0;
    case 6:
      return component?.network_scope != null;
    case 7:
      // either accepted (derivable from 5+6) or pinned by the user
      return (
        component != null &&
        (component.connectivity != null ||
          (component.network_scope != null && component.communication_mechanisms.length > 0))
      );
    case 8:
      return component !== null && component.answers.length > 0;
    case 9:
    case 10:
      return system?.last_results != null && state.dirty === false;
    default:
      return false;
  }
}

/** A step can be entered only when the steps it depends on are complete. */
export function canEnter(step: number, system: SystemDoc | null, state: WizardState): boolean {
  const def = STEPS.find((s) => s.step === step);
  if (!def) return false;
  return def.requires.every((r) => stepComplete(r, system, state));
}

/** Activities unlock with their first step. */
export function canEnterActivity(
  activity: Activity,
  system: SystemDoc | null,
  state: WizardState,
): boolean {
  const first = STEPS.find((s) => s.activity === activity);
  return first ? canEnter(first.step, system, state) : false;
}

/** Whether compute may run: every component complete enough to classify. */
export function computeReady(system: SystemDoc | null): boolean {
  if (!system || system.components.length === 0) return false;
  return system.components.every(
    (c) =>
      c.impact != null &&
      (c.connectivity != null || (c.network_scope != null)) &&
      c.answers.length > 0,
  );
}

/** The badge shown on the class view when results no longer match inputs. */
export function resultsStale(system: SystemDoc | null, state: WizardState): boolean {
  if (!system?.last_results) return false;
  return state.dirty || system.results_freshness === "stale";
}
