// Application wiring: DOM events -> API calls -> re-render.  Exactly one
// mutation runs at a time; clicks while busy are dropped with a hint, and
// version conflicts refetch the authoritative state.

import { ApiClient, ApiError } from "./api.js";
import { renderDiagram, renderPanels, renderQuiver } from "./render.js";
import {
  Action,
  ViewState,
  acceptsMutation,
  initialViewState,
  reduce,
} from "./state.js";
import { PairJson } from "./types.js";

export class ExplorerApp {
  view: ViewState = initialViewState();
  private chain: Promise<void> = Promise.resolve();

  constructor(
    private api: ApiClient,
    private doc: Document,
  ) {}

  dispatch(action: Action): void {
    this.view = reduce(this.view, action);
    this.render();
  }

  render(): void {
    const diagram = this.doc.getElementById("diagram") as unknown as SVGSVGElement;
    const quiver = this.doc.getElementById("quiver") as unknown as SVGSVGElement;
    renderDiagram(this.view, diagram);
    renderQuiver(this.view, quiver);
    renderPanels(this.view, this.doc);
  }

  whenIdle(): Promise<void> {
    return this.chain;
  }

  private enqueue(work: () => Promise<void>): void {
    this.chain = this.chain.then(work).catch(() => undefined);
  }

  newSession(n: number, seed?: string): void {
    this.dispatch({ type: "begin-mutation" });
    this.enqueue(async () => {
      try {
        const { state } = await this.api.createSession(n, seed);
        this.dispatch({ type: "server-state", state });
      } catch (err) {
        this.dispatch({ type: "toast", message: String(err) });
      } finally {
        this.dispatch({ type: "end-mutation" });
      }
    });
  }

  clickPair(pair: PairJson, name: string): void {
    if (!acceptsMutation(this.view)) {
      this.dispatch({ type: "toast", message: "busy: click dropped" });
      return;
    }
    const session = this.view.session!;
    this.dispatch({ type: "select", pair: name });
    this.dispatch({ type: "begin-mutation" });
    this.enqueue(async () => {
      try {
        const state = await this.api.flip(
          session.sessionId,
          pair,
          session.version,
        );
        this.dispatch({ type: "server-state", state });
      } catch (err) {
        if (err instanceof ApiError && err.status === 409) {
          // stale version: someone else moved; refetch the truth
          this.dispatch({ type: "toast", message: "state changed elsewhere; refreshed" });
          const state = await this.api.getState(session.sessionId);
          this.dispatch({ type: "server-state", state });
        } else {
          this.dispatch({ type: "toast", message: String(err) });
        }
      } finally {
        this.dispatch({ type: "end-mutation" });
      }
    });
  }

  hoverPair(name: string | null): void {
    this.dispatch({ type: "hover", pair: name });
  }

  undo(): void {
    if (!acceptsMutation(this.view)) {
      this.dispatch({ type: "toast", message: "busy: undo dropped" });
      return;
    }
    const session = this.view.session!;
    this.dispatch({ type: "begin-mutation" });
    this.enqueue(async () => {
      try {
        const state = await this.api.undo(session.sessionId);
        this.dispatch({ type: "server-state", state });
      } catch (err) {
        this.dispatch({ type: "toast", message: String(err) });
      } finally {
        this.dispatch({ type: "end-mutation" });
      }
    });
  }

  attach(): void {
    const diagram = this.doc.getElementById("diagram")!;
    diagram.addEventListener("click", (ev) => {
      const group = (ev.target as Element).closest("[data-pair]");
      if (!group || !this.view.session) return;
      const name = (group as HTMLElement).dataset.pair!;
      const entry = this.view.session.pairs.find((p) => p.name === name);
      if (entry) this.clickPair(entry.pair, name);
    });
    diagram.addEventListener("mouseover", (ev) => {
      const group = (ev.target as Element).closest("[data-pair]");
      this.hoverPair(group ? (group as HTMLElement).dataset.pair! : null);
    });
    diagram.addEventListener("mouseout", () => this.hoverPair(null));
    this.doc.getElementById("undo")!.addEventListener("click", () => this.undo());
    this.doc.getElementById("new-session")!.addEventListener("click", () => {
      const n = Number(
        (this.doc.getElementById("n-input") as HTMLInputElement).value,
      );
      const seed = (this.doc.getElementById("seed-input") as HTMLInputElement)
        .value.trim();
      this.newSession(n, seed || undefined);
    });
    this.doc
      .getElementById("toasts")!
      .addEventListener("click", () => this.dispatch({ type: "dismiss-toasts" }));
  }
}
