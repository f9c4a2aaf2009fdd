"""
日誌配置模組
只由命令列入口呼叫；函式庫模組僅透過 logging.getLogger(__name__) 取得logger
=============================================================================
"""
import os
import logging
from config.settings import LOG_DIRECTORY, LOG_FILENAME, LOG_LEVEL

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

LEVEL_MAP = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
    'CRITICAL': logging.CRITICAL
}


def setup_logging(level=None, log_to_file=True):
    """
    設置日誌配置

    Args:
        level: 日誌級別名稱，缺省時使用配置中的 LOG_LEVEL
        log_to_file: 是否同時寫入日誌檔案
    """
    handlers = [logging.StreamHandler()]

    if log_to_file:
        # 設定日誌目錄
        if not os.path.exists(LOG_DIRECTORY):
            os.makedirs(LOG_DIRECTORY)
        handlers.append(logging.FileHandler(f"{LOG_DIRECTORY}/{LOG_FILENAME}"))

    logging.basicConfig(
        level=LEVEL_MAP.get((level or LOG_LEVEL).upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True
    )


def get_logger(name):
    """獲取logger實例"""
    return logging.getLogger(name)

