"""
工具函數模組
摘要計算、種子衍生與輸出格式化等通用輔助函數
=============================================================================
"""
import json
import hashlib
import logging

# 設置logger
logger = logging.getLogger(__name__)


def canonical_digest(payload):
    """
    計算可JSON序列化物件的穩定摘要

    Args:
        payload: 可序列化的字典或列表

    Returns:
        str: sha256 十六進位摘要
    """
    key_string = json.dumps(payload, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(key_string.encode()).hexdigest()


def derive_seed(seed, *parts):
    """
    由主種子與任意標識衍生子種子，保證各子任務的隨機性互相獨立且可重現

    Args:
        seed: 主種子
        *parts: 子任務標識（字串或整數）

    Returns:
        int: 63位元以內的子種子
    """
    key_string = json.dumps([int(seed)] + [str(part) for part in parts])
    return int(hashlib.sha256(key_string.encode()).hexdigest()[:15], 16)


def short_digest(digest, length=12):
    """截短摘要用於報告與日誌"""
    return digest[:length]


def format_truth(value):
    """布林值輸出為 true/false"""
    return "true" if value else "false"


def format_yes_no(value):
    """布林值輸出為 yes/no"""
    return "yes" if value else "no"


def write_json_file(path, payload):
    """寫出JSON檔案（UTF-8、縮排2）"""
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(payload, f, indent=2, ensure_ascii=False)
    logger.info(f"已寫出檔案: {path}")


def read_text_file(path):
    """讀取UTF-8文字檔"""
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()
