/**
 * Tracks the highest server revision seen so far. Every response that
 * carries artifacts passes through admit() before rendering; anything
 * older than a revision we have already seen is dropped, so a slow
 * response can never paint stale state over a newer one.
 */
export class RevisionGate {
  private known = -1;

  get revision(): number {
    return this.known;
  }

  /** Record a revision; false means the payload is stale and must not render. */
  admit(revision: number): boolean {
    if (revision < this.known) return false;
    this.known = revision;
    return true;
  }

  /** Forget everything, e.g. after switching sessions. */
  reset(): void {
    this.known = -1;
  }
}
