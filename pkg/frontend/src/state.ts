// Studio session state: the working document, selection, undo/redo history,
// pinned recommendations and the last feedback bundle.

import { cloneDocument, emptyDocument } from "./editor.js";
import type { FeedbackBundle, LayoutDocument, Recommendation } from "./types.js";

export const UNDO_DEPTH = 50; // contract requires at least 20

export class StudioState {
  doc: LayoutDocument;
  selectedId: string | null = null;
  lastBundle: FeedbackBundle | null = null;
  staleData = false; // service unreachable; panels show the last good bundle

  private undoStack: LayoutDocument[] = [];
  private redoStack: LayoutDocument[] = [];
  private pinnedItems = new Map<string, Recommendation>();

  constructor(doc: LayoutDocument = emptyDocument()) {
    this.doc = doc;
  }

  /** Commit a mutation as one undoable step. */
  commit(next: LayoutDocument): void {
    this.undoStack.push(cloneDocument(this.doc));
    if (this.undoStack.length > UNDO_DEPTH) {
      this.undoStack.shift();
    }
    this.redoStack = [];
    this.doc = next;
  }

  get canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  get canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  undo(): boolean {
    const prev = this.undoStack.pop();
    if (!prev) return false;
    this.redoStack.push(cloneDocument(this.doc));
    this.doc = prev;
    return true;
  }

  redo(): boolean {
    const next = this.redoStack.pop();
    if (!next) return false;
    this.undoStack.push(cloneDocument(this.doc));
    this.doc = next;
    return true;
  }

  applyBundle(bundle: FeedbackBundle): void {
    this.lastBundle = bundle;
    this.staleData = false;
  }

  markStale(): void {
    this.staleData = true;
  }

  // --- pinning ----------------------------------------------------------

  isPinned(entryId: string): boolean {
    return this.pinnedItems.has(entryId);
  }

  togglePin(rec: Recommendation): void {
    if (this.pinnedItems.has(rec.entry_id)) {
      this.pinnedItems.delete(rec.entry_id);
    } else {
      this.pinnedItems.set(rec.entry_id, rec);
    }
  }

  get pinnedIds(): string[] {
    return [...this.pinnedItems.keys()];
  }

  /**
   * Recommendations to display: pinned entries first (kept across refreshes
   * until unpinned), then the latest bundle's entries that are not pinned.
   */
  visibleRecommendations(): Recommendation[] {
    const fresh = this.lastBundle ? this.lastBundle.recommendations : [];
    const out = [...this.pinnedItems.values()];
    for (const rec of fresh) {
      if (!this.pinnedItems.has(rec.entry_id)) {
        out.push(rec);
      }
    }
    return out;
  }
}
