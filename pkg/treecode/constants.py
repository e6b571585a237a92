TREECODE_CONFIG = "TREECODE_CONFIG"
DEFAULT_CONFIG_FILE = "treecode.yml"
DEFAULT_KEY = "__default__"
MAX_DISTRIBUTION_N = 40
MAX_ETA_INTERNAL_NODES = 12
ROOT_NODE_ID = "root"
