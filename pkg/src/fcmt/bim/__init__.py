"""Monads and bimodules in an fc-multicategory, and the oracle they form."""

from .categories import (FinCategory, FinFunctor, Profunctor, cat_to_monad, category_universe,
                         functor_to_monad_map, monad_to_cat, profunctor_to_bimodule)
from .oracle import BimFc, bim_oracle
from .structures import (BimTwoCell, Bimodule, Monad, MonadMap, check_bim_cell, check_bimodule,
                         check_monad, check_monad_map)

__all__ = [
    "BimFc", "BimTwoCell", "Bimodule", "FinCategory", "FinFunctor", "Monad", "MonadMap", "Profunctor",
    "bim_oracle", "cat_to_monad", "category_universe", "check_bim_cell", "check_bimodule", "check_monad",
    "check_monad_map", "functor_to_monad_map", "monad_to_cat", "profunctor_to_bimodule",
]
