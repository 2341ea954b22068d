from dotenv import load_dotenv
load_dotenv()

from .kb import (
    KnowledgeBase, ConceptSet, Triple, HashFamily, JoinParams, RepairThresholds, RunConfig, SynthSpec,
    _KBCleaner,
)
from .main import run_pipeline, run_generate, run_sweep, run_eval
