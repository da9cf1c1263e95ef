"""dpforge: regular distance-preserving graphs, exact dp checks and Havel-Hakimi surveys."""

from .canonical import are_isomorphic, canonical_form, canonical_graph
from .constructions import (
    AdmissiblePair,
    ChainBlock,
    TaggedGraph,
    build_regular_dp,
    circulant,
    direct_sum,
    direct_sum_chain,
    is_admissible,
    join,
    k_fold_direct_sum,
)
from .enumeration import SurveyRow, enumerate_connected_regular, survey_modified_hh, survey_regular_dp
from .errors import CertificateError, ConfigError, DpForgeError, FormatError, GraphError, InadmissiblePairError
from .formats import decode_graph6, encode_graph6
from .graph import Graph, distance_matrix, induced_subgraph, is_connected
from .havel_hakimi import (
    DegreeSequence,
    HHOutcome,
    classic_hh,
    enumerate_graphical_sequences,
    erdos_gallai_graphical,
    hh_dp_certificate,
    modified_hh,
)
from .isometry import (
    DpCertificate,
    DpReport,
    is_dp_bruteforce,
    is_isometric,
    isometric_peeling,
    lemma_condition_holds,
    verify_certificate,
)

__version__ = "1.0.0"
