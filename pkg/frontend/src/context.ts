/** Application state and the actions views may trigger.
 *
 * Every class shown anywhere comes from a compute response; the context
 * never derives levels locally.
 */
import { ApiClient, ApiError } from "./api";
import { Store } from "./store";
import type {
  CatalogDoc,
  ComponentDoc,
  ComputeDoc,
  ImprovementOutcome,
  ImprovementPlan,
  SecurityClass,
  SystemDoc,
  SystemSummary,
  TablesDoc,
} from "./types";
import type { Activity, WizardState } from "./wizard";
import { initialWizard } from "./wizard";
import { applyPlan, restoreSnapshot, snapshotOf, type OverlaySnapshot } from "./whatif";

export interface AppState {
  route: Activity;
  systems: SystemSummary[];
  system: SystemDoc | null;
  catalog: CatalogDoc | null;
  tables: TablesDoc | null;
  result: ComputeDoc | null;
  improvement: ImprovementOutcome[] | null;
  overlay: { componentId: string; snapshot: OverlaySnapshot } | null;
  wizard: WizardState;
  busy: boolean;
  error: string | null;
}

export const initialState: AppState = {
  route: "define",
  systems: [],
  system: null,
  catalog: null,
  tables: null,
  result: null,
  improvement: null,
  overlay: null,
  wizard: initialWizard,
  busy: false,
  error: null,
};

export class AppContext {
  store: Store<AppState>;

  constructor(public api: ApiClient) {
    this.store = new Store<AppState>(initialState);
  }

  private async run<T>(work: () => Promise<T>): Promise<T | undefined> {
    this.store.set({ busy: true, error: null });
    try {
      return await work();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // someone else won the optimistic race; pull their version
        this.store.set({ error: "This system changed elsewhere; reloaded the latest version." });
        const id = this.store.get().system?.id;
        if (id) await this.reloadSystem(id);
      } else if (error instanceof ApiError) {
        const detail = error.details[0];
        this.store.set({
          error: detail ? `${error.message}: ${detail.path} - ${detail.message}` : error.message,
        });
      } else {
        this.store.set({ error: String(error) });
      }
      return undefined;
    } finally {
      this.store.set({ busy: false });
    }
  }

  async bootstrap(): Promise<void> {
    await this.run(async () => {
      const [systems, catalog, tables] = await Promise.all([
        this.api.listSystems(),
        this.api.getCatalog(),
        this.api.getTables(),
      ]);
      this.store.set({ systems: systems.systems, catalog, tables });
    });
  }

  navigate(route: Activity): void {
    this.store.set({ route });
  }

  private setWizard(patch: Partial<WizardState>): void {
    this.store.set({ wizard: { ...this.store.get().wizard, ...patch } });
  }

  private async reloadSystem(id: string): Promise<SystemDoc | undefined> {
    const system = await this.api.getSystem(id);
    this.store.set({ system });
    return system;
  }

  private async refreshList(): Promise<void> {
    const { systems } = await this.api.listSystems();
    this.store.set({ systems });
  }

  async createSystem(name: string, description: string): Promise<void> {
    await this.run(async () => {
      const system = await this.api.createSystem(name, description);
      await this.refreshList();
      this.store.set({ system, result: null, improvement: null, overlay: null });
      this.setWizard({ systemId: system.id, componentId: null, dirty: false });
    });
  }

  async selectSystem(id: string): Promise<void> {
    await this.run(async () => {
      const system = await this.reloadSystem(id);
      const cached = system?.last_results?.computed ?? null;
      this.store.set({ result: cached, improvement: null, overlay: null });
      this.setWizard({
        systemId: id,
        componentId: system?.components[0]?.id ?? null,
        dirty: system?.results_freshness === "stale",
      });
    });
  }

  async deleteSystem(id: string): Promise<void> {
    await this.run(async () => {
      await this.api.deleteSystem(id);
      await this.refreshList();
      if (this.store.get().system?.id === id) {
        this.store.set({ system: null, result: null, improvement: null, overlay: null });
        this.setWizard({ systemId: null, componentId: null, dirty: false });
      }
    });
  }

  selectComponent(componentId: string): void {
    this.setWizard({ componentId });
  }

  async addComponent(name: string, componentType: string): Promise<void> {
    await this.run(async () => {
      const system = this.store.get().system;
      if (!system) return;
      const component = await this.api.addComponent(system.id, name, componentType, system.version);
      await this.reloadSystem(system.id);
      this.setWizard({ componentId: component.id, dirty: true });
    });
  }

  async deleteComponent(componentId: string): Promise<void> {
    await this.run(async () => {
      const system = this.store.get().system;
      if (!system) return;
      await this.api.deleteComponent(system.id, componentId);
      const reloaded = await this.reloadSystem(system.id);
      this.setWizard({ componentId: reloaded?.components[0]?.id ?? null, dirty: true });
    });
  }

  async patchAssessment(componentId: string, patch: Partial<ComponentDoc>): Promise<void> {
    await this.run(async () => {
      const system = this.store.get().system;
      if (!system) return;
      await this.api.putAssessment(system.id, componentId, { ...patch, version: system.version });
      await this.reloadSystem(system.id);
      this.setWizard({ dirty: true });
    });
  }

  async patchAnswer(
    componentId: string,
    criterionId: string,
    patch: Partial<ComponentDoc["answers"][number]>,
  ): Promise<void> {
    const system = this.store.get().system;
    const component = system?.components.find((c) => c.id === componentId);
    if (!system || !component) return;
    const answers = component.answers.map((a) =>
      a.criterion_id === criterionId ? { ...a, ...patch } : a,
    );
    await this.patchAssessment(componentId, { answers });
  }

  async compute(): Promise<ComputeDoc | undefined> {
    return await this.run(async () => {
      const system = this.store.get().system;
      if (!system) return undefined;
      const result = await this.api.compute(system.id);
      await this.reloadSystem(system.id);
      this.store.set({ result, improvement: this.store.get().improvement });
      this.setWizard({ dirty: false });
      return result;
    });
  }

  async findPlans(target: SecurityClass): Promise<void> {
    await this.run(async () => {
      const system = this.store.get().system;
      if (!system) return;
      const improve = await this.api.improve(system.id, target);
      this.store.set({ improvement: improve.components });
    });
  }

  /** Apply a plan speculatively: snapshot, push the overlay, recompute. */
  async applyPlanOverlay(componentId: string, plan: ImprovementPlan): Promise<void> {
    const system = this.store.get().system;
    const component = system?.components.find((c) => c.id === componentId);
    if (!system || !component) return;
    const existing = this.store.get().overlay;
    const snapshot = existing?.componentId === componentId ? existing.snapshot : snapshotOf(component);
    const patched = applyPlan(component, plan);
    await this.patchAssessment(componentId, {
      answers: patched.answers,
      connectivity: patched.connectivity,
    });
    this.store.set({ overlay: { componentId, snapshot } });
    await this.compute();
  }

  /** Put the snapshot back and recompute; the speculation leaves no trace. */
  async discardOverlay(): Promise<void> {
    const overlay = this.store.get().overlay;
    const system = this.store.get().system;
    if (!overlay || !system) return;
    const component = system.components.find((c) => c.id === overlay.componentId);
    if (component) {
      const restored = restoreSnapshot(component, overlay.snapshot);
      await this.patchAssessment(component.id, {
        answers: restored.answers,
        connectivity: restored.connectivity,
      });
    }
    this.store.set({ overlay: null });
    await this.compute();
  }
}
