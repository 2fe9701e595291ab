"""Character-level cleaning pipeline for Urdu news text.

Nine independent steps, each a pure ``str -> str`` function, composable in a
configurable order via :func:`normalize_pipeline`. Pattern-bearing removals
(URLs, emails, phone numbers, currency) run before character-class removals
in the default order, because stripping punctuation or digits first would
destroy the very patterns those steps match.
"""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass, field
from pathlib import Path

# Whitespace classes collapsed by normalize_whitespace: every Unicode
# whitespace (space, tab, newline, no-break space, ...) plus the zero-width
# space, which Python's \s does not cover.
_WHITESPACE_RE = re.compile(r"[\s​]+")

# ASCII punctuation plus the Urdu/Arabic marks and quotation guillemets.
_PUNCTUATION_CHARS = set(string.punctuation) | {
    "۔",  # ۔ full stop
    "،",  # ، comma
    "؟",  # ؟ question mark
    "؛",  # ؛ semicolon
    "٪",  # ٪ percent sign
    "«",  # «
    "»",  # »
    "‹",  # ‹
    "›",  # ›
}
_PUNCTUATION_RE = re.compile("[" + re.escape("".join(sorted(_PUNCTUATION_CHARS))) + "]")

# Arabic harakat (short-vowel combining marks). The superscript alef U+0670
# is handled separately: some orthographies treat it as part of the word.
_HARAKAT_RE = re.compile(r"[ً-ْ]")
_SUPERSCRIPT_ALEF = "ٰ"

_URL_RE = re.compile(r"(?:(?:https?|ftp)://\S+|\bwww\.\S+)")
_EMAIL_RE = re.compile(r"[\w.%+-]+@[A-Za-z0-9](?:[A-Za-z0-9.-]*[A-Za-z0-9])?\.[A-Za-z]{2,}")

# Digit groups of 2-7 joined by single hyphens or spaces, at least two
# groups, optional + country code. Total digit count is validated separately
# (7-15) so lone years like "2003" or short pairs never match.
_PHONE_RE = re.compile(r"(?<!\d)(?:\+\d{1,3}[- ])?\d{2,7}(?:[- ]\d{2,7}){1,4}(?!\d)")
_PHONE_MIN_DIGITS = 7
_PHONE_MAX_DIGITS = 15

# ASCII digits, Arabic-Indic, Extended Arabic-Indic.
_DIGIT_RE = re.compile(r"[0-9٠-٩۰-۹]")

_ENGLISH_RE = re.compile(r"[A-Za-z]")

DEFAULT_CURRENCY_MAP = {
    "$": "USD",
    "€": "EUR",   # €
    "£": "GBP",   # £
    "₨": "PKR",   # ₨
    "¥": "JPY",   # ¥
}


class UnknownStepError(ValueError):
    """A pipeline configuration names a step that does not exist."""


def normalize_whitespace(text: str) -> str:
    """Collapse every whitespace run to a single space and trim the ends."""
    return _WHITESPACE_RE.sub(" ", text).strip()


def remove_punctuation(text: str) -> str:
    """Delete ASCII punctuation plus Urdu marks (۔ ، ؟ ؛ ٪) and guillemets."""
    return _PUNCTUATION_RE.sub("", text)


def remove_diacritics(text: str, remove_superscript_alef: bool = False) -> str:
    """Delete Arabic harakat (U+064B..U+0652), leaving base letters intact.

    The superscript alef U+0670 is kept unless explicitly requested,
    preserving spellings like عظمیٰ.
    """
    text = _HARAKAT_RE.sub("", text)
    if remove_superscript_alef:
        text = text.replace(_SUPERSCRIPT_ALEF, "")
    return text


def remove_urls(text: str) -> str:
    """Remove scheme-prefixed URLs and bare www. hosts, leaving a space."""
    return _URL_RE.sub(" ", text)


def remove_emails(text: str) -> str:
    """Remove local@domain.tld addresses, leaving a space."""
    return _EMAIL_RE.sub(" ", text)


def _phone_replacement(match: re.Match) -> str:
    digits = sum(ch.isdigit() for ch in match.group())
    if _PHONE_MIN_DIGITS <= digits <= _PHONE_MAX_DIGITS:
        return " "
    return match.group()


def remove_phone_numbers(text: str) -> str:
    """Remove phone-like digit groups (2+ groups, 7-15 digits total)."""
    return _PHONE_RE.sub(_phone_replacement, text)


def remove_numbers(text: str) -> str:
    """Delete all digit characters (ASCII and both Arabic-Indic ranges)."""
    return _DIGIT_RE.sub("", text)


def replace_currency(text: str, currency_map: dict[str, str] | None = None) -> str:
    """Replace each currency symbol with its code, space-padded.

    Adjacent digits are untouched; "$33" becomes " USD 33".
    """
    mapping = DEFAULT_CURRENCY_MAP if currency_map is None else currency_map
    for symbol, code in mapping.items():
        text = text.replace(symbol, f" {code} ")
    return text


def remove_english(text: str) -> str:
    """Delete all Basic Latin letters A-Z and a-z."""
    return _ENGLISH_RE.sub("", text)


# Pipeline step registry. Order here is the default execution order:
# pattern-bearing removals first, whitespace normalization last.
DEFAULT_STEPS = (
    "remove_urls",
    "remove_emails",
    "remove_phone_numbers",
    "replace_currency",
    "remove_numbers",
    "remove_punctuation",
    "remove_diacritics",
    "remove_english",
    "normalize_whitespace",
)


@dataclass
class NormalizerConfig:
    """Which steps run, in what order, and with what parameters."""

    enabled_steps: tuple[str, ...] = DEFAULT_STEPS
    currency_map: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_CURRENCY_MAP))
    remove_superscript_alef: bool = False

    def __post_init__(self) -> None:
        unknown = [s for s in self.enabled_steps if s not in DEFAULT_STEPS]
        if unknown:
            raise UnknownStepError(f"unknown pipeline step(s): {', '.join(unknown)}")
        if len(set(self.enabled_steps)) != len(self.enabled_steps):
            raise UnknownStepError("pipeline steps must not repeat")
        if self.currency_map.get("$") != "USD":
            raise ValueError('currency_map must map "$" to "USD"')

    def to_dict(self) -> dict:
        return {
            "enabled_steps": list(self.enabled_steps),
            "currency_map": dict(self.currency_map),
            "remove_superscript_alef": self.remove_superscript_alef,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NormalizerConfig":
        return cls(
            enabled_steps=tuple(data.get("enabled_steps", DEFAULT_STEPS)),
            currency_map=dict(data.get("currency_map", DEFAULT_CURRENCY_MAP)),
            remove_superscript_alef=bool(data.get("remove_superscript_alef", False)),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "NormalizerConfig":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))

    def to_file(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(self.to_dict(), handle, ensure_ascii=False, indent=2)


def _protect_currency_codes(text: str, codes: list[str]) -> tuple[str, dict[str, str]]:
    # Whole-token currency codes are swapped for non-Latin sentinels so the
    # English-removal step cannot erase them. Protecting existing tokens too
    # (not just freshly inserted ones) keeps the full pipeline idempotent.
    placeholders: dict[str, str] = {}
    for i, code in enumerate(codes):
        sentinel = f"\x00{i}\x00"
        placeholders[sentinel] = code
        text = re.sub(rf"\b{re.escape(code)}\b", sentinel, text)
    return text, placeholders


def normalize_pipeline(text: str, config: NormalizerConfig | None = None) -> str:
    """Run the enabled cleaning steps in configured order."""
    cfg = config or NormalizerConfig()
    for step in cfg.enabled_steps:
        if step == "replace_currency":
            text = replace_currency(text, cfg.currency_map)
        elif step == "remove_diacritics":
            text = remove_diacritics(text, cfg.remove_superscript_alef)
        elif step == "remove_english":
            text, placeholders = _protect_currency_codes(text, list(cfg.currency_map.values()))
            text = remove_english(text)
            for sentinel, code in placeholders.items():
                text = text.replace(sentinel, code)
        else:
            text = globals()[step](text)
    return text
