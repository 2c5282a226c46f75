/** What-if overlays: apply an improvement plan speculatively.
 *
 * The overlay patches answers (and optionally connectivity) so the
 * patched assessment can be sent for a real recompute; the snapshot of
 * the original keeps discarding trivial. Classes always come back from
 * the service, never from local arithmetic.
 */
import type { ComponentDoc, ImprovementPlan } from "./types";

export interface OverlaySnapshot {
  componentId: string;
  answers: ComponentDoc["answers"];
  connectivity: ComponentDoc["connectivity"];
}

export function snapshotOf(component: ComponentDoc): OverlaySnapshot {
  return {
    componentId: component.id,
    answers: component.answers.map((a) => ({ ...a })),
    connectivity: component.connectivity ? { ...component.connectivity } : null,
  };
}

/** A copy of the component with the plan's changes applied. */
export function applyPlan(component: ComponentDoc, plan: ImprovementPlan): ComponentDoc {
  const toSatisfy = new Set(plan.criteria_to_satisfy);
  const answers = component.answers.map((a) =>
    toSatisfy.has(a.criterion_id) ? { ...a, status: "satisfied" as const } : { ...a },
  );
  const connectivity = plan.connectivity_change
    ? { level: plan.connectivity_change.to, provenance: "user_override" as const }
    : component.connectivity
      ? { ...component.connectivity }
      : null;
  return { ...component, answers, connectivity };
}

/** A copy of the component restored to the snapshot taken before apply. */
export function restoreSnapshot(component: ComponentDoc, snapshot: OverlaySnapshot): ComponentDoc {
  return {
    ...component,
    answers: snapshot.answers.map((a) => ({ ...a })),
    connectivity: snapshot.connectivity ? { ...snapshot.connectivity } : null,
  };
}

export function describePlan(plan: ImprovementPlan): string {
  const parts: string[] = [];
  if (plan.criteria_to_satisfy.length > 0) {
    parts.push(`satisfy ${plan.criteria_to_satisfy.join(", ")}`);
  }
  if (plan.connectivity_change) {
    parts.push(
      `reduce connectivity ${plan.connectivity_change.from} → ${plan.connectivity_change.to}`,
    );
  }
  return parts.join("; ") || "no changes needed";
}
