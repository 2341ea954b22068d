from .kb_core import (
    Triple, ConceptSet, TsvFormat, ParseReport, KnowledgeBase, WeightRange,
    parse_triples, read_kb, build_concept_sets, flatten_concept_sets, intersection,
    parse_weight_ranges, frequency_histogram,
)
from .signatures import (
    HashFamily, BitSignature, MinSignature,
    fingerprint, simhash, minhash, hamming, estimate_jaccard, compute_simhashes, compute_minhashes,
)
from .signature_cache import SignatureCache, members_digest
from .conflict_join import (
    ConflictPair, JoinParams, blocking_scope, hamming_join, lsh_bucketize, jaccard_join, combine,
)
from .repair import (
    Verdict, RelationVerdict, RepairThresholds, ClassifiedRelation, RepairOutput,
    classify, classify_pair, classify_pairs, apply_repairs, differential_report,
)
from .oracle import EvalReport, exact_jaccard, naive_conflict_join, evaluate_planted, frequency_baseline
from .synthetic import SynthSpec, SyntheticKB, generate_synthetic
from .run_config import RunConfig
from .pipeline import _KBCleaner, clean
from .sweep import sweep, SWEEP_AXES
