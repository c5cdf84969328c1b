import { ApiClient, ApiError } from "./api.js";
import { createRecognizer, recognitionAvailable, Speaker } from "./speech.js";
import { Message, TurnResponse } from "./types.js";

export class ChatController {
  messages: Message[] = [];
  sessionId: string | null = null;
  ended = false;
  private inFlight = false;
  private lastFailedText: string | null = null;

  private list!: HTMLElement;
  private input!: HTMLInputElement;
  private sendButton!: HTMLButtonElement;
  private micButton: HTMLButtonElement | null = null;
  private speakToggle: HTMLInputElement | null = null;
  private banner!: HTMLElement;
  private notice!: HTMLElement;
  private speaker: Speaker;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private win: Window = window,
  ) {
    this.speaker = new Speaker(this.win);
    this.buildLayout();
  }

  private buildLayout(): void {
    this.root.innerHTML = "";
    this.root.classList.add("chat");

    const header = document.createElement("header");
    header.className = "chat-header";
    header.textContent = "Jewelry Shop Assistant";
    if (this.speaker.available) {
      const label = document.createElement("label");
      label.className = "speak-label";
      this.speakToggle = document.createElement("input");
      this.speakToggle.type = "checkbox";
      this.speakToggle.id = "speak-toggle";
      this.speakToggle.addEventListener("change", () => {
        this.speaker.setEnabled(this.speakToggle!.checked);
      });
      label.append(this.speakToggle, document.createTextNode(" read replies aloud"));
      header.appendChild(label);
    }

    this.list = document.createElement("main");
    this.list.className = "messages";
    this.list.id = "messages";

    this.banner = document.createElement("div");
    this.banner.className = "banner hidden";
    this.banner.id = "banner";

    this.notice = document.createElement("div");
    this.notice.className = "notice hidden";
    this.notice.id = "notice";

    const form = document.createElement("form");
    form.className = "input-row";
    this.input = document.createElement("input");
    this.input.type = "text";
    this.input.id = "chat-input";
    this.input.placeholder = "Ask about the shop…";
    this.input.autocomplete = "off";
    this.sendButton = document.createElement("button");
    this.sendButton.type = "submit";
    this.sendButton.id = "send-button";
    this.sendButton.textContent = "Send";
    form.append(this.input, this.sendButton);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.send(this.input.value);
    });

    if (recognitionAvailable(this.win)) {
      this.micButton = document.createElement("button");
      this.micButton.type = "button";
      this.micButton.id = "mic-button";
      this.micButton.textContent = "🎤";
      this.micButton.title = "Speak your question";
      this.micButton.addEventListener("click", () => this.listen());
      form.appendChild(this.micButton);
    }

    this.root.append(header, this.list, this.banner, this.notice, form);
  }

  async start(): Promise<void> {
    try {
      this.sessionId = await this.api.createSession();
    } catch {
      this.showBanner("Could not reach the chat service.", "Retry", () => {
        this.hideBanner();
        void this.start();
      });
    }
  }

  /** One turn; ignored while a previous turn is still in flight. */
  async send(rawText: string): Promise<void> {
    const text = rawText.trim();
    if (!text || this.inFlight || this.ended || !this.sessionId) return;

    this.inFlight = true;
    this.sendButton.disabled = true;
    this.pushMessage({ role: "user", text });
    this.input.value = "";

    let turn: TurnResponse;
    try {
      turn = await this.api.sendMessage(this.sessionId, text);
    } catch (error) {
      this.messages.pop(); // the turn never happened server-side
      this.render();
      this.handleSendError(error, text);
      this.inFlight = false;
      this.sendButton.disabled = this.ended;
      return;
    }

    this.pushMessage({
      role: "bot",
      text: turn.response,
      intent: turn.intent,
      confidence: turn.confidence,
    });
    if (turn.followup) {
      this.pushMessage({ role: "bot", text: turn.followup });
    }
    this.speaker.speak(turn.followup ? [turn.response, turn.followup] : [turn.response]);

    if (turn.ended) {
      this.ended = true;
      this.showBanner("Session closed. Thanks for visiting!", "New conversation", () => {
        void this.reset();
      });
    }
    this.inFlight = false;
    this.updateInputState();
  }

  private handleSendError(error: unknown, text: string): void {
    if (error instanceof ApiError && error.status === 410) {
      this.ended = true;
      this.updateInputState();
      this.showBanner("This session has ended.", "New conversation", () => {
        void this.reset();
      });
      return;
    }
    this.lastFailedText = text;
    this.input.value = text;
    this.showBanner("Message failed to send.", "Retry", () => {
      this.hideBanner();
      const failed = this.lastFailedText;
      this.lastFailedText = null;
      if (failed) void this.send(failed);
    });
  }

  private async reset(): Promise<void> {
    this.ended = false;
    this.messages = [];
    this.hideBanner();
    this.render();
    this.updateInputState();
    await this.start();
  }

  private listen(): void {
    const recognizer = createRecognizer(this.win);
    if (!recognizer || this.ended) return;
    this.micButton!.disabled = true;
    recognizer.onresult = (event) => {
      let transcript = "";
      for (let i = 0; i < event.results.length; i += 1) {
        transcript += event.results[i][0].transcript;
      }
      this.input.value = transcript; // interim shown live, final stays editable
    };
    recognizer.onerror = (event) => {
      if (event.error === "not-allowed" || event.error === "service-not-allowed") {
        this.showNotice("Microphone permission denied; keep typing instead.");
      }
    };
    recognizer.onend = () => {
      this.micButton!.disabled = false;
      this.input.focus();
    };
    recognizer.start();
  }

  private pushMessage(message: Message): void {
    this.messages.push(message); // append-only; render derives the whole view
    this.render();
  }

  /** The rendered list is a pure function of the message array. */
  render(): void {
    this.list.innerHTML = "";
    for (const message of this.messages) {
      this.list.appendChild(renderBubble(message));
    }
    this.list.scrollTop = this.list.scrollHeight;
  }

  private updateInputState(): void {
    this.input.disabled = this.ended;
    this.sendButton.disabled = this.ended;
    if (this.micButton) this.micButton.disabled = this.ended;
  }

  private showBanner(text: string, actionLabel: string, action: () => void): void {
    this.banner.innerHTML = "";
    this.banner.classList.remove("hidden");
    this.banner.appendChild(document.createTextNode(text + " "));
    const button = document.createElement("button");
    button.type = "button";
    button.className = "banner-action";
    button.textContent = actionLabel;
    button.addEventListener("click", action);
    this.banner.appendChild(button);
  }

  private hideBanner(): void {
    this.banner.classList.add("hidden");
    this.banner.innerHTML = "";
  }

  private showNotice(text: string): void {
    this.notice.textContent = text;
    this.notice.classList.remove("hidden");
  }
}

export function renderBubble(message: Message): HTMLElement {
  const bubble = document.createElement("div");
  bubble.className = `bubble ${message.role}`;
  const text = document.createElement("p");
  text.textContent = message.text;
  bubble.appendChild(text);
  if (message.role === "bot" && message.intent !== undefined) {
    const badge = document.createElement("span");
    badge.className = "badge";
    const confidence =
      message.confidence === undefined ? "" : ` ${(message.confidence * 100).toFixed(0)}%`;
    badge.textContent = `${message.intent}${confidence}`;
    bubble.appendChild(badge);
  }
  return bubble;
}
