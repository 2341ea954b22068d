from . import filesystem
from . import module_pool
from . import module_prologo
from . import module_s3
from . import module_status
from . import strings
from . import status_exception
