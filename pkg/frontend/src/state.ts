// Draft state and evaluation orchestration, kept DOM-free for testability.
// A draft is validated before every submit; invalid drafts never reach the
// API. Responses apply last-write-wins, and the last good report survives
// transient failures.

import { ApiClient, ApiRequestError } from "./api.js";
import { LatestWins } from "./sequence.js";
import type {
  EnergyReport,
  FactorsDraft,
  FlagsDraft,
  ScenarioDraft,
  VariantDraft,
} from "./types.js";
import { validateFactors, validateScenario, type FieldError } from "./validate.js";

export interface ViewState {
  report: EnergyReport | null;
  fieldErrors: FieldError[];
  networkError: string | null;
  pending: boolean;
}

export class ScenarioSession {
  private readonly sequence = new LatestWins();
  private state: ViewState = {
    report: null,
    fieldErrors: [],
    networkError: null,
    pending: false,
  };

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: (state: ViewState) => void,
    private readonly baselineName: string = "baseline",
  ) {}

  get view(): ViewState {
    return this.state;
  }

  private emit(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
    this.onChange(this.state);
  }

  /** Validate and submit a draft; resolves once the view settled. */
  async submit(
    draft: ScenarioDraft,
    factors: FactorsDraft,
    variant: VariantDraft | null = null,
    flags: FlagsDraft | null = null,
  ): Promise<void> {
    const fieldErrors = [...validateScenario(draft), ...validateFactors(factors)];
    if (fieldErrors.length > 0) {
      this.emit({ fieldErrors, pending: false });
      return; // a failing draft is never submitted
    }
    const ticket = this.sequence.ticket();
    this.emit({ fieldErrors: [], pending: true });
    try {
      const report = await this.api.evaluate({
        scenario: draft,
        baseline: this.baselineName,
        factors,
        ...(flags ? { flags } : {}),
        ...(variant ? { variant } : {}),
      });
      if (!this.sequence.accept(ticket)) {
        return; // a newer request already landed
      }
      this.emit({ report, networkError: null, pending: false });
    } catch (err) {
      if (!this.sequence.accept(ticket)) {
        return;
      }
      if (err instanceof ApiRequestError) {
        this.emit({
          fieldErrors: err.field ? [{ field: err.field, message: err.message }] : [],
          networkError: err.field ? null : err.message,
          pending: false,
        });
      } else {
        // retriable transport failure: keep the last good report visible
        this.emit({ networkError: String(err), pending: false });
      }
    }
  }
}
