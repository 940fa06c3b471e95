import re

MATH_PLACEHOLDER = "MATHEXPR"

_DISPLAY_DOLLAR = re.compile(r"\$\$(.+?)\$\$", re.DOTALL)
_INLINE_DOLLAR = re.compile(r"(?<!\\)\$([^$]+?)(?<!\\)\$")
_PAREN_MATH = re.compile(r"\\\((.+?)\\\)", re.DOTALL)
_BRACKET_MATH = re.compile(r"\\\[(.+?)\\\]", re.DOTALL)
# innermost \cmd{arg} only; applied until fixpoint so nesting unwinds
_COMMAND_ARG = re.compile(r"\\[A-Za-z]+\*?\s*\{([^{}]*)\}")
_ESCAPED = re.compile(r"\\([%&_#])")
_WS = re.compile(r"\s+")


def strip_markup(raw_text: str) -> str:
    """Replace inline math with a placeholder, unwrap LaTeX commands, normalize spaces.

    Unbalanced delimiters are left as they are.  The operation is idempotent.
    """
    text = raw_text
    for pattern in (_DISPLAY_DOLLAR, _INLINE_DOLLAR, _PAREN_MATH, _BRACKET_MATH):
        text = pattern.sub(f" {MATH_PLACEHOLDER} ", text)
    while True:
        reduced = _COMMAND_ARG.sub(r"\1", text)
        if reduced == text:
            break
        text = reduced
    text = _ESCAPED.sub(r"\1", text)
    text = _WS.sub(" ", text).strip()
    text = re.sub(rf"{MATH_PLACEHOLDER} (?=[.,;:!?)\]])", MATH_PLACEHOLDER, text)
    text = re.sub(rf"(?<=[(\[]) {MATH_PLACEHOLDER}", MATH_PLACEHOLDER, text)
    return text
