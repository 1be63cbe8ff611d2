"""Sentence resampling and ordinal encoding."""

import logging
from collections.abc import Sequence

from ..models.exceptions import AllEmptyError, InconsistentAlphabetError
from ..models.grammar import GrammarSentence
from ..models.labels import PAD_CODE, Layer

logger = logging.getLogger(__name__)


def resample_sentences(
    sentences: Sequence[GrammarSentence], length: int | None = None
) -> list[list[str]]:
    """Stretch the sentences of one layer and state to a common length.

    The length defaults to the longest sentence. Shorter sentences repeat
    their last symbol, empty ones are filled with the layer's neutral symbol
    and longer ones (only possible with an explicit ``length``) are truncated.

    Raises:
        AllEmptyError: If every sentence is empty
        InconsistentAlphabetError: If the sentences mix layers
    """
    if not sentences or all(len(s) == 0 for s in sentences):
        raise AllEmptyError()

    layers = {s.layer for s in sentences}
    if len(layers) != 1:
        raise InconsistentAlphabetError(
            f"Sentences mix layers: {sorted(layer.value for layer in layers)}"
        )
    layer = layers.pop()

    target = length if length is not None else max(len(s) for s in sentences)
    resampled = []
    for sentence in sentences:
        symbols = list(sentence.symbols)
        if not symbols:
            symbols = [layer.neutral]
        if len(symbols) > target:
            logger.debug(
                f"Truncating {layer.value}/{sentence.axis} from {len(symbols)} to {target}"
            )
            symbols = symbols[:target]
        # Hold the last symbol to the target length
        symbols.extend([symbols[-1]] * (target - len(symbols)))
        resampled.append(symbols)
    return resampled


def encode_symbols(symbols: Sequence[str], layer: Layer) -> list[int]:
    """Ordinal codes of a symbol sequence."""
    return [layer.code(symbol) for symbol in symbols]


def decode_codes(codes: Sequence[int], layer: Layer) -> list[str]:
    """Symbols of an ordinal code sequence, dropping pad codes."""
    return [s for s in (layer.decode(int(c)) for c in codes) if s is not None]


def encode_partial(sentence: GrammarSentence, length: int) -> list[int]:
    """Codes of a sentence still being produced, padded with the pad code."""
    codes = encode_symbols(sentence.symbols[:length], sentence.layer)
    return codes + [PAD_CODE] * (length - len(codes))
